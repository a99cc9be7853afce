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

#include "dlprover/prooftree.hpp"

#include <algorithm>
#include <ctime>
#include <deque>
#include <set>
#include <stdexcept>

#include "dlprover/printer.hpp"

namespace dlp::prooftree {

using nlohmann::json;
using tactics::Tactic;

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Click:
            return "click";
        case Provenance::Tactic:
            return "tactic";
        case Provenance::Auto:
            return "auto";
    }
    return "click";
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "click") return Provenance::Click;
    if (s == "tactic") return Provenance::Tactic;
    if (s == "auto") return Provenance::Auto;
    throw std::invalid_argument("unknown provenance " + s);
}

namespace {

std::string now_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[40];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

tactics::Options replay_options() {
    tactics::Options o;
    o.step_budget = std::numeric_limits<std::size_t>::max() / 2;
    return o;
}

std::vector<std::string> branch_labels(const std::string& rule, std::size_t n) {
    if (rule == "loop" && n == 3) return {"base case", "use case", "induction step"};
    if (rule == "cut" && n == 2) return {"use cut", "show cut"};
    if (rule == "choicebCond" && n == 2) return {"rewritten", "condition"};
    return std::vector<std::string>(n);
}

}  // namespace

// --- journal ------------------------------------------------------------------

json JournalEntry::to_json() const {
    if (kind == Kind::Prune)
        return {{"kind", undo ? "undo" : "prune"}, {"node", node}, {"timestamp", step.timestamp}};
    json pos = nullptr;
    if (step.atom.locator.kind == tactics::LocatorKind::Fixed) pos = step.atom.locator.pos.to_string();
    return {{"kind", "step"},
            {"node", node},
            {"atom", step.atom.name},
            {"inputs", step.atom.inputs},
            {"position", pos},
            {"provenance", prooftree::to_string(step.provenance)},
            {"dialog", step.from_dialog},
            {"timestamp", step.timestamp},
            {"seconds", step.seconds}};
}

JournalEntry JournalEntry::from_json(const json& j) {
    JournalEntry e;
    e.node = j.at("node").get<std::size_t>();
    e.step.timestamp = j.value("timestamp", "");
    std::string kind = j.value("kind", "step");
    if (kind == "prune" || kind == "undo") {
        e.kind = Kind::Prune;
        e.undo = kind == "undo";
        return e;
    }
    tactics::Locator loc;
    if (j.contains("position") && !j.at("position").is_null())
        loc = tactics::Locator::fixed(Position::parse(j.at("position").get<std::string>()));
    e.step.atom = Tactic::atom(j.at("atom").get<std::string>(),
                               j.value("inputs", std::vector<std::string>{}), loc);
    e.step.provenance = provenance_from_string(j.value("provenance", "click"));
    e.step.from_dialog = j.value("dialog", false);
    e.step.seconds = j.value("seconds", 0.0);
    return e;
}

// --- metrics --------------------------------------------------------------------

json Metrics::to_json(double wall_seconds) const {
    json distances = json::array();
    for (const auto& [up, down] : pruned_branch_distances)
        distances.push_back({{"above", up ? json(*up) : json(nullptr)}, {"below", down ? json(*down) : json(nullptr)}});
    return {{"steps_click", steps_click},
            {"steps_tactic", steps_tactic},
            {"steps_auto", steps_auto},
            {"steps_total", steps_click + steps_tactic + steps_auto},
            {"steps_top_level", steps_top_level},
            {"steps_inside_formula", steps_inner},
            {"steps_by_pointing", steps_pointing},
            {"steps_from_dialog", steps_dialog},
            {"failed_steps", failed_steps},
            {"undo_operations", undo_operations},
            {"prunes", prunes},
            {"pruned_path_lengths", pruned_lengths},
            {"pruned_branch_distances", distances},
            {"interactions_in_pruned_proofs", interactions_in_pruned},
            {"counterexample_invocations", counterexample_invocations},
            {"reproof_attempts", reproof_attempts},
            {"step_seconds", step_seconds},
            {"wall_seconds", wall_seconds}};
}

// --- tree -----------------------------------------------------------------------

ProofTree::ProofTree(const Formula& conjecture) : ProofTree(start_proof(conjecture).conclusion()) {}

ProofTree::ProofTree(const Sequent& conjecture)
    : provable_(start_proof(conjecture)), started_(std::chrono::steady_clock::now()) {
    Node root;
    root.id = 0;
    root.sequent = conjecture;
    nodes_.emplace(0, std::move(root));
}

const Node& ProofTree::node(std::size_t id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw std::out_of_range("unknown node " + std::to_string(id));
    return it->second;
}

double ProofTree::wall_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
}

std::vector<std::size_t> ProofTree::open_leaves() const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        std::size_t id = stack.back();
        stack.pop_back();
        const Node& n = nodes_.at(id);
        if (n.open()) out.push_back(id);
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

std::optional<std::size_t> ProofTree::goal_index(std::size_t leaf) const {
    auto leaves = open_leaves();
    auto it = std::find(leaves.begin(), leaves.end(), leaf);
    if (it == leaves.end()) return std::nullopt;
    return static_cast<std::size_t>(it - leaves.begin());
}

void ProofTree::expand(std::size_t leaf, const StepInfo& step, const std::vector<Sequent>& premises) {
    Node& n = nodes_.at(leaf);
    n.step = step;
    auto labels = branch_labels(step.atom.name, premises.size());
    for (std::size_t i = 0; i < premises.size(); ++i) {
        Node child;
        child.id = next_id_++;
        child.sequent = premises[i];
        child.parent = leaf;
        child.label = labels[i];
        n.children.push_back(child.id);
        nodes_.emplace(child.id, std::move(child));
    }
    step_order_.push_back(leaf);
}

void ProofTree::count(const StepInfo& step) {
    switch (step.provenance) {
        case Provenance::Click:
            ++metrics_.steps_click;
            ++(step.from_dialog ? metrics_.steps_dialog : metrics_.steps_pointing);
            break;
        case Provenance::Tactic:
            ++metrics_.steps_tactic;
            break;
        case Provenance::Auto:
            ++metrics_.steps_auto;
            break;
    }
    const auto& loc = step.atom.locator;
    if (loc.kind == tactics::LocatorKind::Fixed && !loc.pos.top_level())
        ++metrics_.steps_inner;
    else
        ++metrics_.steps_top_level;
    metrics_.step_seconds.push_back(step.seconds);
}

std::vector<JournalEntry> ProofTree::record_step(std::size_t leaf, const Tactic& t, Provenance provenance,
                                                 bool from_dialog, const tactics::Options& opts) {
    auto goal = goal_index(leaf);
    if (!goal) throw tactics::TacticError("node " + std::to_string(leaf) + " is not an open goal");
    tactics::Interpreter in(opts);
    std::vector<tactics::StepEvent> events;
    in.on_step([&](const tactics::StepEvent& e) { events.push_back(e); });
    auto t0 = std::chrono::steady_clock::now();
    Provable q = [&] {
        try {
            return in.run_on(t, provable_, *goal);
        } catch (const tactics::TacticError&) {
            ++metrics_.failed_steps;
            diagnostics_ = in.diagnostics();
            throw;
        }
    }();
    diagnostics_ = in.diagnostics();
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string stamp = now_utc();

    std::vector<JournalEntry> added;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        std::size_t target = open_leaves().at(e.goal);
        StepInfo info{e.atom, provenance, from_dialog, stamp, i == 0 ? seconds : 0.0};
        expand(target, info, e.produced);
        count(info);
        JournalEntry j;
        j.node = target;
        j.step = info;
        journal_.push_back(j);
        added.push_back(j);
    }
    provable_ = std::move(q);
    if (open_leaves().size() != provable_.subgoals().size())
        throw std::logic_error("proof tree and provable disagree");
    return added;
}

void ProofTree::apply(const JournalEntry& e) {
    if (e.kind == JournalEntry::Kind::Prune) {
        if (e.undo) ++metrics_.undo_operations;
        std::size_t before = journal_.size();
        prune(e.node);
        if (journal_.size() > before) journal_.back().undo = e.undo;
        return;
    }
    auto goal = goal_index(e.node);
    if (!goal) throw std::invalid_argument("journal refers to node " + std::to_string(e.node) + ", not an open goal");
    tactics::Interpreter in(replay_options());
    std::size_t before = provable_.subgoals().size();
    Provable q = tactics::apply_atom(in, provable_, *goal, e.step.atom);
    std::size_t k = q.subgoals().size() + 1 - before;
    std::vector<Sequent> premises(q.subgoals().begin() + static_cast<std::ptrdiff_t>(*goal),
                                  q.subgoals().begin() + static_cast<std::ptrdiff_t>(*goal + k));
    expand(e.node, e.step, premises);
    count(e.step);
    journal_.push_back(e);
    provable_ = std::move(q);
}

void ProofTree::prune(std::size_t id) {
    if (!contains(id)) throw std::out_of_range("unknown node " + std::to_string(id));
    Node& target = nodes_.at(id);
    if (target.open()) return;

    // Statistics before removal.
    std::optional<std::size_t> above, below;
    {
        std::size_t d = 0;
        std::optional<std::size_t> cur = target.parent;
        while (cur) {
            ++d;
            if (nodes_.at(*cur).children.size() > 1) {
                above = d;
                break;
            }
            cur = nodes_.at(*cur).parent;
        }
    }
    std::set<std::size_t> removed;
    std::size_t length = 0;
    std::deque<std::pair<std::size_t, std::size_t>> queue{{id, 0}};
    while (!queue.empty()) {
        auto [n, depth] = queue.front();
        queue.pop_front();
        const Node& nd = nodes_.at(n);
        if (nd.step) ++length;
        if (!below && nd.children.size() > 1) below = depth;
        if (n != id) removed.insert(n);
        for (auto c : nd.children) queue.push_back({c, depth + 1});
    }

    for (auto n : removed) nodes_.erase(n);
    target.children.clear();
    target.step.reset();
    step_order_.erase(std::remove_if(step_order_.begin(), step_order_.end(),
                                     [&](std::size_t n) { return n == id || removed.count(n); }),
                      step_order_.end());

    ++metrics_.prunes;
    metrics_.pruned_lengths.push_back(length);
    metrics_.pruned_branch_distances.push_back({above, below});
    metrics_.interactions_in_pruned += length;

    JournalEntry j;
    j.kind = JournalEntry::Kind::Prune;
    j.node = id;
    j.step.timestamp = now_utc();
    journal_.push_back(j);
    rebuild();
}

void ProofTree::undo() {
    if (step_order_.empty()) throw std::logic_error("nothing to undo");
    ++metrics_.undo_operations;
    prune(step_order_.back());
    journal_.back().undo = true;
}

void ProofTree::rebuild() {
    Provable p = start_proof(nodes_.at(0).sequent);
    std::set<std::size_t> done;
    tactics::Interpreter in(replay_options());
    for (std::size_t id : step_order_) {
        std::vector<std::size_t> leaves;
        std::vector<std::size_t> stack{0};
        while (!stack.empty()) {
            std::size_t n = stack.back();
            stack.pop_back();
            if (!done.count(n)) {
                leaves.push_back(n);
                continue;
            }
            const auto& kids = nodes_.at(n).children;
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
        }
        auto at = std::find(leaves.begin(), leaves.end(), id);
        if (at == leaves.end()) throw std::logic_error("replay lost node " + std::to_string(id));
        std::size_t goal = static_cast<std::size_t>(at - leaves.begin());
        const Node& n = nodes_.at(id);
        Provable q = tactics::apply_atom(in, p, goal, n.step->atom);
        std::size_t k = q.subgoals().size() + 1 - p.subgoals().size();
        if (k != n.children.size()) throw std::logic_error("replay diverged at node " + std::to_string(id));
        for (std::size_t i = 0; i < k; ++i)
            if (!(q.subgoals()[goal + i] == nodes_.at(n.children[i]).sequent))
                throw std::logic_error("replay diverged at node " + std::to_string(id));
        p = std::move(q);
        done.insert(id);
    }
    provable_ = std::move(p);
}

Tactic ProofTree::extract_tactic() const {
    std::function<Tactic(std::size_t)> go = [&](std::size_t id) -> Tactic {
        const Node& n = nodes_.at(id);
        if (!n.step) return Tactic::nil();
        std::vector<Tactic> chain{n.step->atom};
        if (n.children.size() == 1) {
            Tactic rest = go(n.children[0]);
            if (rest.kind == tactics::TacticKind::Seq)
                chain.insert(chain.end(), rest.children.begin(), rest.children.end());
            else if (rest.kind != tactics::TacticKind::Nil)
                chain.push_back(std::move(rest));
        } else if (n.children.size() > 1) {
            std::vector<Tactic> cases;
            bool any = false;
            for (auto c : n.children) {
                cases.push_back(go(c));
                any = any || cases.back().kind != tactics::TacticKind::Nil;
            }
            if (any) chain.push_back(Tactic::branch(std::move(cases)));
        }
        return Tactic::seq(std::move(chain));
    };
    return go(0);
}

DeductionPath ProofTree::deduction_path(std::size_t leaf) const {
    DeductionPath out;
    std::optional<std::size_t> cur = leaf;
    node(leaf);
    while (cur) {
        out.nodes.push_back(*cur);
        cur = nodes_.at(*cur).parent;
    }
    std::reverse(out.nodes.begin(), out.nodes.end());
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < out.nodes.size(); ++i) {
        const Node& n = nodes_.at(out.nodes[i]);
        if (n.children.size() < 2) continue;
        BranchLink link{n.id, out.nodes[i + 1], {}};
        for (auto c : n.children)
            if (c != link.taken) link.others.push_back(c);
        out.links.push_back(std::move(link));
        out.groups.push_back({start, i + 1});
        start = i + 1;
    }
    out.groups.push_back({start, out.nodes.size()});
    return out;
}

json ProofTree::to_json() const {
    json nodes = json::array();
    for (const auto& [id, n] : nodes_) {
        json step = nullptr;
        if (n.step)
            step = {{"tactic", tactics::print_tactic(n.step->atom)},
                    {"atom", n.step->atom.name},
                    {"provenance", prooftree::to_string(n.step->provenance)},
                    {"dialog", n.step->from_dialog},
                    {"timestamp", n.step->timestamp}};
        nodes.push_back({{"id", id},
                         {"sequent", dlp::to_string(n.sequent)},
                         {"parent", n.parent ? json(*n.parent) : json(nullptr)},
                         {"children", n.children},
                         {"label", n.label},
                         {"status", n.open() ? "open" : n.closed() ? "closed" : "expanded"},
                         {"step", step}});
    }
    return {{"root", 0}, {"proved", proved()}, {"open", open_leaves()}, {"nodes", nodes}};
}

}  // namespace dlp::prooftree
