/* Copyright 2026 The dlprover Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef DLPROVER_PROOFTREE_HPP
#define DLPROVER_PROOFTREE_HPP

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlprover/kernel.hpp"
#include "dlprover/tactics.hpp"
#include "json.hpp"

namespace dlp::prooftree {

// How a step was requested.
enum class Provenance { Click, Tactic, Auto };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);  // throws std::invalid_argument

struct StepInfo {
    tactics::Tactic atom;  // resolved atom
    Provenance provenance = Provenance::Click;
    bool from_dialog = false;
    std::string timestamp;
    double seconds = 0;
};

struct Node {
    std::size_t id = 0;
    Sequent sequent;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
    std::optional<StepInfo> step;  // set once the node is expanded
    std::string label;             // e.g. "base case"

    bool open() const { return !step; }
    bool closed() const { return step && children.empty(); }
};

// One line of a proof journal: an expanded node or a prune.
struct JournalEntry {
    enum class Kind { Step, Prune };
    Kind kind = Kind::Step;
    std::size_t node = 0;
    bool undo = false;  // Kind::Prune issued as an undo
    StepInfo step;      // Kind::Step

    nlohmann::json to_json() const;
    static JournalEntry from_json(const nlohmann::json& j);
};

struct BranchLink {
    std::size_t node;                 // branching point on the path
    std::size_t taken;                // child on the path
    std::vector<std::size_t> others;  // sibling children, in branch order
};

struct DeductionPath {
    std::vector<std::size_t> nodes;  // root first
    std::vector<BranchLink> links;
    // Half-open index ranges into `nodes`, split after each branching point.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
};

struct Metrics {
    std::size_t steps_click = 0;
    std::size_t steps_tactic = 0;
    std::size_t steps_auto = 0;
    std::size_t steps_top_level = 0;
    std::size_t steps_inner = 0;
    std::size_t steps_pointing = 0;
    std::size_t steps_dialog = 0;
    std::size_t failed_steps = 0;
    std::size_t undo_operations = 0;
    std::size_t prunes = 0;
    std::vector<std::size_t> pruned_lengths;
    // Edges from the pruned node up to the nearest branching ancestor and
    // down to the nearest branching descendant, when there is one.
    std::vector<std::pair<std::optional<std::size_t>, std::optional<std::size_t>>> pruned_branch_distances;
    std::size_t interactions_in_pruned = 0;
    std::size_t counterexample_invocations = 0;
    std::size_t reproof_attempts = 0;
    std::vector<double> step_seconds;

    nlohmann::json to_json(double wall_seconds) const;
};

class ProofTree {
public:
    explicit ProofTree(const Formula& conjecture);
    explicit ProofTree(const Sequent& conjecture);

    std::size_t root() const { return 0; }
    const Node& node(std::size_t id) const;  // throws std::out_of_range
    bool contains(std::size_t id) const { return nodes_.count(id) > 0; }
    const std::map<std::size_t, Node>& nodes() const { return nodes_; }
    const Provable& provable() const { return provable_; }
    bool proved() const { return provable_.proved(); }

    // Open leaves in subgoal order.
    std::vector<std::size_t> open_leaves() const;
    std::optional<std::size_t> goal_index(std::size_t leaf) const;

    // Runs t on the leaf's subgoal and expands one node per atom applied.
    // On failure the tree is unchanged and the error is rethrown.
    // Returns the journal entries added.
    std::vector<JournalEntry> record_step(std::size_t leaf, const tactics::Tactic& t, Provenance provenance,
                                          bool from_dialog = false, const tactics::Options& opts = {});

    // Removes everything below the node and rebuilds the Provable by replay.
    void prune(std::size_t id);
    // Prunes the most recent step.
    void undo();

    tactics::Tactic extract_tactic() const;
    DeductionPath deduction_path(std::size_t leaf) const;

    // Clash diagnostics from the last record_step.
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

    Metrics& metrics() { return metrics_; }
    const Metrics& metrics() const { return metrics_; }
    double wall_seconds() const;

    // Everything that happened, in order; replaying it reproduces the tree.
    const std::vector<JournalEntry>& journal() const { return journal_; }
    void apply(const JournalEntry& e);

    nlohmann::json to_json() const;

private:
    std::map<std::size_t, Node> nodes_;
    std::size_t next_id_ = 1;
    Provable provable_;
    std::vector<JournalEntry> journal_;
    std::vector<std::size_t> step_order_;  // expanded nodes in the order they were expanded
    Metrics metrics_;
    std::vector<std::string> diagnostics_;
    std::chrono::steady_clock::time_point started_;

    void expand(std::size_t leaf, const StepInfo& step, const std::vector<Sequent>& premises);
    void count(const StepInfo& step);
    void rebuild();
};

}  // namespace dlp::prooftree

#endif
