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

#include "doctest.h"

#include "dlprover/parser.hpp"
#include "dlprover/printer.hpp"
#include "dlprover/prooftree.hpp"
#include "support/corpus.hpp"
#include "support/sessions.hpp"

using namespace dlp;
using namespace dlp::prooftree;
using dlp::tactics::parse_tactic;
using dlp::tactics::print_tactic;
using dlp::tactics::Tactic;

namespace {

ProofTree escalator() { return ProofTree(parse_formula(corpus::kEscalator)); }

// Drives the golden proof one click at a time; returns the tree.
ProofTree clicked_proof() {
    ProofTree t = escalator();
    auto click = [&](const char* atom) {
        auto leaves = t.open_leaves();
        REQUIRE(!leaves.empty());
        t.record_step(leaves.front(), parse_tactic(atom), Provenance::Click);
    };
    for (const char* a : {"implyR(1)", "andL(-1)", "loop(\"x>0\", 1)", "QE", "QE", "unfold", "QE", "ODE(1)", "QE"})
        click(a);
    return t;
}

std::size_t expanded_with(const ProofTree& t, const std::string& atom) {
    for (const auto& [id, n] : t.nodes())
        if (n.step && n.step->atom.name == atom) return id;
    FAIL("no node expanded with " << atom);
    return 0;
}

}  // namespace

TEST_CASE("recording steps") {
    ProofTree t = escalator();
    CHECK(t.open_leaves() == std::vector<std::size_t>{0});
    auto added = t.record_step(0, parse_tactic("implyR(1)"), Provenance::Click);
    REQUIRE(added.size() == 1);
    CHECK(t.node(0).children.size() == 1);
    CHECK(t.metrics().steps_click == 1);
    CHECK(to_string(t.node(t.node(0).children[0]).sequent) ==
          "x>=2&v>=0 ==> [{?x>1;x:=x-1;++{x'=v}}*]x>=0");

    ProofTree q(parse_sequent("==> x*x>=0"));
    CHECK_THROWS_AS(q.record_step(0, Tactic::atom("QE"), Provenance::Click), tactics::TacticError);
    CHECK(q.nodes().size() == 1);
    CHECK(q.open_leaves() == std::vector<std::size_t>{0});
    CHECK(q.metrics().failed_steps == 1);
    CHECK(q.journal().empty());

    t.record_step(t.open_leaves()[0], parse_tactic("andL(-1); loop(\"x>0\", 1)"), Provenance::Tactic);
    std::size_t loop = expanded_with(t, "loop");
    std::vector<std::string> labels;
    for (auto c : t.node(loop).children) labels.push_back(t.node(c).label);
    CHECK(labels == std::vector<std::string>{"base case", "use case", "induction step"});
    CHECK(t.metrics().steps_tactic == 2);
    CHECK_THROWS_AS(t.record_step(0, Tactic::atom("QE"), Provenance::Click), tactics::TacticError);
}

TEST_CASE("the clicked golden proof") {
    ProofTree t = clicked_proof();
    CHECK(t.proved());
    CHECK(print_tactic(t.extract_tactic()) == corpus::kGoldenScript);
    const Metrics& m = t.metrics();
    CHECK(m.steps_click == 9);
    CHECK(m.steps_tactic == 0);
    CHECK(m.steps_auto == 0);
    CHECK(m.steps_pointing == 9);
    CHECK(t.metrics().to_json(t.wall_seconds())["steps_total"] == 9);

    // Four leaves closed below the loop: base, use, assign and ODE.
    std::size_t loop = expanded_with(t, "loop");
    std::size_t unfold = expanded_with(t, "unfold");
    CHECK(t.node(loop).children.size() == 3);
    CHECK(t.node(unfold).children.size() == 2);
    std::size_t closed = 0;
    for (const auto& [id, n] : t.nodes()) closed += n.closed();
    CHECK(closed == 4);
}

TEST_CASE("tactic extraction") {
    CHECK(print_tactic(escalator().extract_tactic()) == "nil");

    ProofTree t = escalator();
    t.record_step(0, parse_tactic("implyR(1); andL(-1); loop(\"x>0\", 1); <(QE, QE, unfold)"), Provenance::Tactic);
    CHECK(print_tactic(t.extract_tactic()) == "implyR(1); andL(-1); loop(\"x>0\", 1); <(QE, QE, unfold)");
    CHECK(t.open_leaves().size() == 2);

    // Search locators are recorded at their resolved positions.
    ProofTree s(parse_sequent("x>0&y>0 ==> x>0"));
    s.record_step(0, parse_tactic("andL('L)"), Provenance::Tactic);
    CHECK(print_tactic(s.extract_tactic()) == "andL(-1)");
}

TEST_CASE("pruning") {
    ProofTree one = escalator();
    Provable initial = one.provable();
    one.record_step(0, parse_tactic("implyR(1)"), Provenance::Click);
    one.prune(0);
    CHECK(one.provable().subgoals() == initial.subgoals());
    CHECK(one.nodes().size() == 1);

    ProofTree t = clicked_proof();
    std::size_t ode = expanded_with(t, "ODE");
    std::string ode_goal = to_string(t.node(ode).sequent);
    t.prune(ode);
    REQUIRE(t.open_leaves() == std::vector<std::size_t>{ode});
    CHECK(to_string(t.provable().subgoals()[0]) == ode_goal);
    std::size_t closed = 0;
    for (const auto& [id, n] : t.nodes()) closed += n.closed();
    CHECK(closed == 3);
    CHECK(t.metrics().pruned_lengths == std::vector<std::size_t>{2});
    CHECK(t.provable().conclusion() == escalator().provable().conclusion());

    ProofTree u = clicked_proof();
    std::size_t loop = expanded_with(u, "loop");
    u.prune(loop);
    CHECK(u.open_leaves() == std::vector<std::size_t>{loop});
    CHECK(u.provable().subgoals().size() == 1);
    CHECK(u.metrics().pruned_lengths == std::vector<std::size_t>{7});
    CHECK(u.metrics().pruned_branch_distances[0].first == std::nullopt);
    CHECK(u.metrics().pruned_branch_distances[0].second == std::optional<std::size_t>(0));
    CHECK(u.metrics().interactions_in_pruned == 7);

    CHECK_THROWS_AS(u.prune(9999), std::out_of_range);

    ProofTree w = escalator();
    w.record_step(0, parse_tactic("implyR(1); andL(-1); loop(\"x>0\", 1)"), Provenance::Tactic);
    w.undo();
    CHECK(w.metrics().undo_operations == 1);
    CHECK(print_tactic(w.extract_tactic()) == "implyR(1); andL(-1)");
    w.prune(w.node(0).children[0]);
    CHECK(w.metrics().pruned_lengths == std::vector<std::size_t>{1, 1});
    // Three steps pruned at once.
    ProofTree x = escalator();
    x.record_step(0, parse_tactic("implyR(1); andL(-1); loop(\"x>0\", 1)"), Provenance::Tactic);
    x.prune(0);
    CHECK(x.metrics().pruned_lengths == std::vector<std::size_t>{3});
}

TEST_CASE("deduction paths") {
    ProofTree single = escalator();
    CHECK(single.deduction_path(0).nodes == std::vector<std::size_t>{0});
    CHECK(single.deduction_path(0).links.empty());

    ProofTree t = clicked_proof();
    std::size_t ode = expanded_with(t, "ODE");
    std::size_t leaf = t.node(ode).children.at(0);
    DeductionPath p = t.deduction_path(leaf);
    CHECK(p.nodes.size() >= 5);
    CHECK(p.nodes.front() == 0);
    CHECK(p.nodes.back() == leaf);
    REQUIRE(p.links.size() == 2);
    CHECK(p.links[0].node == expanded_with(t, "loop"));
    CHECK(p.links[0].others.size() == 2);
    CHECK(p.links[1].node == expanded_with(t, "unfold"));
    CHECK(p.links[1].others.size() == 1);
    CHECK(p.groups.size() == 3);
    CHECK(p.groups.front().first == 0);
    CHECK(p.groups.back().second == p.nodes.size());

    // Replaying the steps along the path yields the leaf's sequent.
    Provable q = start_proof(t.node(0).sequent);
    tactics::Interpreter in;
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        const Node& n = t.node(p.nodes[i]);
        Provable r = tactics::apply_atom(in, q, 0, n.step->atom);
        std::size_t branch = static_cast<std::size_t>(
            std::find(n.children.begin(), n.children.end(), p.nodes[i + 1]) - n.children.begin());
        q = start_proof(r.subgoals().at(branch));
    }
    CHECK(q.subgoals()[0] == t.node(leaf).sequent);

    t.prune(expanded_with(t, "unfold"));
    for (const auto& [id, n] : t.nodes()) {
        (void)n;
        for (auto m : t.deduction_path(id).nodes) CHECK(t.contains(m));
    }
}

TEST_CASE("metrics") {
    ProofTree fresh = escalator();
    auto j = fresh.metrics().to_json(0);
    for (const char* k : {"steps_click", "steps_tactic", "steps_auto", "steps_total", "undo_operations", "prunes",
                          "counterexample_invocations", "reproof_attempts", "interactions_in_pruned_proofs"})
        CHECK(j[k] == 0);
    CHECK(j["pruned_path_lengths"].empty());

    ProofTree a(parse_formula(corpus::kEscalatorAnnotated));
    a.record_step(0, Tactic::atom("auto"), Provenance::Auto);
    CHECK(a.proved());
    CHECK(a.metrics().steps_auto == 1);

    ProofTree inner(parse_sequent("==> x>0 -> [?y>0;]x>0"));
    inner.record_step(0, parse_tactic("testb(1.1)"), Provenance::Click, true);
    CHECK(inner.metrics().steps_inner == 1);
    CHECK(inner.metrics().steps_dialog == 1);
}

TEST_CASE("journal and crash recovery") {
    ProofTree t = clicked_proof();
    t.prune(expanded_with(t, "ODE"));
    t.record_step(t.open_leaves()[0], parse_tactic("ODE(1); QE"), Provenance::Tactic);
    t.undo();
    ProofTree r = sessions::restart(t);
    CHECK(r.to_json() == t.to_json());
    CHECK(r.provable().subgoals() == t.provable().subgoals());
    CHECK(r.metrics().undo_operations == 1);
    for (const auto& e : t.journal()) CHECK(JournalEntry::from_json(e.to_json()).to_json() == e.to_json());
    auto line = t.journal().front().to_json();
    for (const char* k : {"node", "atom", "inputs", "position", "provenance", "timestamp"}) CHECK(line.contains(k));
}

TEST_CASE("random sessions keep the tree, the kernel and the script in agreement") {
    std::mt19937 rng(8);
    for (int i = 0; i < 40; ++i) {
        ProofTree t = sessions::random_session(rng, 12);
        CAPTURE(to_string(t.node(0).sequent));
        std::string script = print_tactic(t.extract_tactic());
        CAPTURE(script);
        // Open leaves and subgoals correspond.
        auto leaves = t.open_leaves();
        REQUIRE(leaves.size() == t.provable().subgoals().size());
        for (std::size_t k = 0; k < leaves.size(); ++k) CHECK(t.node(leaves[k]).sequent == t.provable().subgoals()[k]);
        CHECK(t.provable().conclusion() == t.node(0).sequent);
        // Replaying the extracted script reproduces the open goals.
        Provable replay = tactics::interpret(parse_tactic(script), start_proof(t.node(0).sequent));
        CHECK(sessions::sorted_goals(replay.subgoals()) == sessions::open_leaf_goals(t));
        // Restarting from the journal reproduces the state.
        ProofTree r = sessions::restart(t);
        CHECK(r.to_json() == t.to_json());
    }
}
