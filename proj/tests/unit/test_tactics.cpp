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

#include <random>

#include "dlprover/parser.hpp"
#include "dlprover/printer.hpp"
#include "dlprover/tactics.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace dlp;
using namespace dlp::tactics;

namespace {

std::string goals(const Provable& p) {
    std::string out;
    for (const auto& g : p.subgoals()) out += to_string(g) + "\n";
    return out;
}

Provable on(const char* sequent) { return start_proof(parse_sequent(sequent)); }

Tactic A(const char* name, std::vector<std::string> in = {}, Locator loc = {}) {
    return Tactic::atom(name, std::move(in), std::move(loc));
}

Locator at(int i) { return Locator::fixed(Position::parse(std::to_string(i))); }

bool mentions_loop_or_ode(const Formula& f);

bool program_has(const Program& p) {
    if (p.kind() == ProgramKind::Loop || p.kind() == ProgramKind::Ode) return true;
    for (const auto& c : children(Expr(p)))
        if (const auto* q = std::get_if<Program>(&c); q && program_has(*q)) return true;
    return false;
}

bool mentions_loop_or_ode(const Formula& f) {
    if (f.kind() == FormulaKind::Box && program_has(f.program())) return true;
    for (const auto& c : children(Expr(f)))
        if (const auto* g = std::get_if<Formula>(&c); g && mentions_loop_or_ode(*g)) return true;
    return false;
}

Tactic random_tactic(std::mt19937& rng, int depth) {
    static const char* names[] = {"implyR", "andL", "andR", "orL", "orR", "notL", "notR", "close",
                                  "assignb", "testb", "choiceb", "composeb", "iterateb", "ODE",
                                  "QE", "prop", "unfold", "hideL", "hideR", "equivR"};
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    if (depth == 0 || pick(3) == 0) {
        Tactic t = A(names[pick(std::size(names))]);
        if (is_positional(t.name)) {
            switch (pick(4)) {
                case 0:
                    t.locator = Locator::fixed(Position{pick(2) ? Side::Succ : Side::Ante, 1 + pick(2), {}});
                    break;
                case 1:
                    t.locator.kind = LocatorKind::FirstAnte;
                    break;
                case 2:
                    t.locator.kind = LocatorKind::FirstSucc;
                    break;
                default:
                    break;
            }
        }
        return t;
    }
    std::vector<Tactic> kids;
    int n = 1 + pick(3);
    for (int i = 0; i < n; ++i) kids.push_back(random_tactic(rng, depth - 1));
    switch (pick(5)) {
        case 0:
            return Tactic::seq(std::move(kids));
        case 1:
            return Tactic::alt(std::move(kids));
        case 2:
            return Tactic::repeat(std::move(kids[0]));
        case 3:
            return Tactic::branch(std::move(kids));
        default:
            return Tactic::alt({Tactic::seq(std::move(kids)), Tactic::nil()});
    }
}

}  // namespace

TEST_CASE("tactic syntax") {
    Tactic golden = parse_tactic(corpus::kGoldenScript);
    Tactic expect = Tactic::seq({
        A("implyR", {}, at(1)),
        A("andL", {}, at(-1)),
        A("loop", {"x>0"}, at(1)),
        Tactic::branch({A("QE"), A("QE"),
                        Tactic::seq({A("unfold"), Tactic::branch({A("QE"), Tactic::seq({A("ODE", {}, at(1)), A("QE")})})})}),
    });
    CHECK(golden == expect);
    CHECK(print_tactic(golden) == corpus::kGoldenScript);

    CHECK(parse_tactic("nil") == Tactic::nil());
    CHECK(parse_tactic("andL('L)*") == Tactic::repeat(A("andL", {}, {LocatorKind::FirstAnte, {}})));
    CHECK(parse_tactic("unfold & ODE(1) & QE") == parse_tactic("unfold; ODE(1); QE"));
    CHECK(parse_tactic("a | b; c*") == Tactic::alt({A("a"), Tactic::seq({A("b"), Tactic::repeat(A("c"))})}));
    CHECK(parse_tactic("choiceb(1.1)").locator.pos == succ(1, {1}));
    CHECK(parse_tactic("hideR('Rlast)").locator.kind == LocatorKind::LastSucc);
    CHECK(parse_tactic("cut(\"x>\\\"0\")").inputs[0] == "x>\"0");
    CHECK(parse_tactic("<()") == Tactic::branch({}));
    CHECK(parse_tactic("// comment\nQE // trailing") == A("QE"));

    for (const char* bad : {"", "implyR(", "<(QE", "QE)", "andL('X)", "f(1, 2)", "loop(\"x>0\"", "a;;b", "*"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_tactic(bad), TacticParseError);
    }
    try {
        parse_tactic("QE; )");
        FAIL("expected an error");
    } catch (const TacticParseError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("tactic printing round-trips") {
    std::mt19937 rng(11);
    for (int i = 0; i < 300; ++i) {
        Tactic t = random_tactic(rng, 4);
        std::string text = print_tactic(t);
        CAPTURE(text);
        CHECK(parse_tactic(text) == t);
    }
    // Groups keep their structure.
    for (const char* s : {"(a; b); c", "a; (b | c)", "(a | b) | c", "(a; b)*", "(a | b)*", "a**", "<(a, b | c)*"}) {
        CAPTURE(s);
        CHECK(print_tactic(parse_tactic(s)) == s);
    }
}

TEST_CASE("the golden script closes the escalator") {
    Provable p = start_proof(parse_formula(corpus::kEscalator));
    Interpreter in;
    std::vector<StepEvent> events;
    in.on_step([&](const StepEvent& e) { events.push_back(e); });
    Provable q = in.run(parse_tactic(corpus::kGoldenScript), p);
    CHECK(q.proved());
    CHECK(q.conclusion() == p.conclusion());
    REQUIRE(events.size() == 9);
    std::vector<std::pair<std::string, std::size_t>> shape;
    for (const auto& e : events) shape.push_back({print_tactic(e.atom), e.premises});
    std::vector<std::pair<std::string, std::size_t>> want{
        {"implyR(1)", 1}, {"andL(-1)", 1}, {"loop(\"x>0\", 1)", 3}, {"QE", 0}, {"QE", 0},
        {"unfold", 2},    {"QE", 0},       {"ODE(1)", 1},          {"QE", 0}};
    CHECK(shape == want);
}

TEST_CASE("interpreter semantics") {
    Provable p = on("x>0, v>=0 ==> [{x'=v}]x>0");
    CHECK(interpret(Tactic::nil(), p).subgoals() == p.subgoals());

    Provable nonlinear = on("==> x*x>=0");
    CHECK_THROWS_AS(interpret(A("QE"), nonlinear), TacticError);
    CHECK(interpret(Tactic::alt({A("QE"), Tactic::nil()}), nonlinear).subgoals() == nonlinear.subgoals());

    // Search locators resolve to the first applicable formula.
    Interpreter in;
    std::vector<StepEvent> ev;
    in.on_step([&](const StepEvent& e) { ev.push_back(e); });
    Provable r = in.run(parse_tactic("andL('L)*"), on("x>0&(y>0&z>0), w>0&u>0 ==> x>0"));
    CHECK(goals(r) == "x>0, w>0, y>0, u>0, z>0 ==> x>0\n");
    REQUIRE(ev.size() == 3);
    CHECK(print_tactic(ev[0].atom) == "andL(-1)");

    // An atom applies to every goal in range where it can.
    Provable split = interpret(parse_tactic("andR(1)"), on("==> x=x&y>0"));
    CHECK(split.subgoals().size() == 2);
    CHECK(goals(interpret(parse_tactic("QE"), split)) == "==> y>0\n");

    // Branch arity and errors carry the subgoal.
    try {
        interpret(parse_tactic("andR(1); <(QE)"), on("==> x>0&y>0"));
        FAIL("expected an arity error");
    } catch (const TacticError& e) {
        CHECK(std::string(e.what()).find("1 tactics for 2 subgoals") != std::string::npos);
    }
    try {
        interpret(parse_tactic("implyR(2)"), on("==> x>0->x>0"));
        FAIL("expected an inapplicable atom");
    } catch (const TacticError& e) {
        CHECK(e.goal() == std::optional<std::size_t>(0));
        CHECK(e.position() == std::optional<Position>(succ(2)));
    }
    CHECK_THROWS_AS(interpret(parse_tactic("frobnicate"), p), TacticError);

    // Failed alternatives leave no events behind.
    Interpreter in2;
    std::vector<StepEvent> ev2;
    in2.on_step([&](const StepEvent& e) { ev2.push_back(e); });
    in2.run(parse_tactic("(implyR(1); QE; QE) | implyR(1)"), on("==> x>0->x>1"));
    REQUIRE(ev2.size() == 1);
    CHECK(print_tactic(ev2[0].atom) == "implyR(1)");
}

TEST_CASE("step budget, timeout and cancellation") {
    Options o;
    o.step_budget = 5;
    Provable p = start_proof(parse_formula(corpus::kEscalator));
    try {
        interpret(parse_tactic(corpus::kGoldenScript), p, o);
        FAIL("expected budget error");
    } catch (const TacticError& e) {
        CHECK(std::string(e.what()).find("budget") != std::string::npos);
    }
    // Budget errors are not recovered by alternatives or repetition.
    CHECK_THROWS_AS(interpret(parse_tactic("iterateb('R)* | nil"), on("==> [{x:=x+1;}*]x>=0"), o), TacticError);

    std::atomic<bool> cancel{true};
    Options c;
    c.cancel = &cancel;
    CHECK_THROWS_WITH_AS(interpret(parse_tactic("implyR(1) | nil"), on("==> x>0->x>0"), c), "canceled",
                         TacticError);
}

TEST_CASE("prop") {
    CHECK(prop(on("==> x>0&y>0 -> y>0&x>0"), 0).proved());
    CHECK(prop(on("==> x>0 -> x>0"), 0).proved());
    CHECK(prop(on("==> (x>0 <-> y>0) -> (y>0 <-> x>0)"), 0).proved());
    Provable esc = on("x>=2&v>=0 ==> [{{?x>1; x:=x-1;} ++ {x'=v}}*] x>=0");
    CHECK(goals(prop(esc, 0)) == "x>=2, v>=0 ==> [{?x>1;x:=x-1;++{x'=v}}*]x>=0\n");
    CHECK_THROWS_AS(prop(on("==> x>0"), 0), TacticError);
    // Truth-table oracle: prop closes exactly the tautologies over atoms.
    const char* atoms[] = {"x>0", "y>0", "z>0"};
    std::mt19937 rng(5);
    std::function<std::string(int)> gen = [&](int d) -> std::string {
        if (d == 0 || rng() % 3 == 0) return atoms[rng() % 3];
        const char* ops[] = {"&", "|", "->", "<->"};
        if (rng() % 5 == 0) return "!(" + gen(d - 1) + ")";
        return "(" + gen(d - 1) + ops[rng() % 4] + gen(d - 1) + ")";
    };
    for (int i = 0; i < 200; ++i) {
        std::string text = gen(3);
        CAPTURE(text);
        Formula f = parse_formula(text);
        bool taut = true;
        for (int m = 0; m < 8; ++m) {
            std::map<std::string, Rational> st{{"x", m & 1 ? 1 : -1}, {"y", m & 2 ? 1 : -1}, {"z", m & 4 ? 1 : -1}};
            taut = taut && *oracle::eval(f, st);
        }
        Provable p = start_proof(f);
        bool closed = interpret(Tactic::alt({A("prop"), Tactic::nil()}), p).proved();
        CHECK(closed == taut);
    }
}

TEST_CASE("unfold") {
    Provable p = unfold(on("x>0, v>=0 ==> [{?x>1; x:=x-1;} ++ {x'=v}]x>0"), 0);
    CHECK(goals(p) == "x>0, v>=0, x>1 ==> x-1>0\nx>0, v>=0 ==> [{x'=v}]x>0\n");
    CHECK_THROWS_AS(unfold(on("x>0 ==> x>0"), 0), TacticError);
    CHECK(goals(unfold(on("==> [x:=1; y:=x+1; ?y>x;]y>=2"), 0)) == "1+1>1 ==> 1+1>=2\n");
    Provable chain = unfold(on("==> [a:=1; b:=a; c:=b;]c=1"), 0);
    Provable manual = interpret(parse_tactic("composeb(1); composeb(1.1); assignb(1); assignb(1); assignb(1)"),
                                on("==> [a:=1; b:=a; c:=b;]c=1"));
    CHECK(chain.subgoals() == manual.subgoals());
    CHECK(goals(chain) == "==> 1=1\n");

    for (const char* g : corpus::sequents()) {
        CAPTURE(g);
        Provable q = interpret(Tactic::alt({A("unfold"), Tactic::nil()}), on(g));
        Sequent s = parse_sequent(g);
        for (const auto& sub : q.subgoals()) {
            std::size_t before = 0, after = 0;
            for (const auto& f : s.succ) before += mentions_loop_or_ode(f);
            for (const auto& f : sub.succ) after += mentions_loop_or_ode(f);
            // Loops and ODEs are never unfolded, only split off.
            CHECK(after <= before + 1);
        }
    }
}

TEST_CASE("loop") {
    Provable p = on("x>=2, v>=0 ==> [{{?x>1; x:=x-1;} ++ {x'=v}}*@invariant(x>0)] x>=0");
    Provable a = loop_tactic(p, 0, succ(1), std::nullopt);
    Provable b = loop_tactic(p, 0, succ(1), parse_formula("x>0"));
    CHECK(a.subgoals() == b.subgoals());
    CHECK(goals(a) ==
          "x>=2, v>=0 ==> x>0\nx>0 ==> x>=0\nx>0, v>=0 ==> [?x>1;x:=x-1;++{x'=v}]x>0\n");
    Provable bare = on("x>=2, v>=0 ==> [{{?x>1; x:=x-1;} ++ {x'=v}}*] x>=0");
    CHECK_THROWS_WITH_AS(loop_tactic(bare, 0, succ(1), std::nullopt), doctest::Contains("invariant"), TacticError);
    CHECK_THROWS_AS(interpret(parse_tactic("loop(\"x>\", 1)"), bare), TacticError);
}

TEST_CASE("auto") {
    CHECK(auto_tactic(start_proof(parse_formula(corpus::kEscalatorAnnotated))).proved());
    CHECK(auto_tactic(on("==> true")).proved());

    Provable open = auto_tactic(start_proof(parse_formula(corpus::kEscalator)));
    REQUIRE(open.subgoals().size() == 1);
    CHECK(to_string(open.subgoals()[0]) == "x>=2, v>=0 ==> [{?x>1;x:=x-1;++{x'=v}}*]x>=0");
    bool has_loop = false;
    for (const auto& s : suggest(open.subgoals()[0], succ(1))) has_loop = has_loop || s.tactic == "loop";
    CHECK(has_loop);

    // QE failure leaves the goal open rather than failing.
    CHECK(auto_tactic(on("==> x*x>=0")).subgoals().size() == 1);
}

TEST_CASE("suggestions") {
    Sequent bare = parse_sequent("x>=2, v>=0 ==> [{{?x>1; x:=x-1;} ++ {x'=v}}*] x>=0");
    auto at_loop = suggest(bare, succ(1));
    REQUIRE(at_loop.size() == 2);
    CHECK(at_loop[0].tactic == "iterateb");
    CHECK(at_loop[0].display_kind == DisplayKind::Axiom);
    CHECK(at_loop[0].display == "[*]");
    CHECK(at_loop[0].conclusion == "[{a;}*]p(||)");
    CHECK(at_loop[0].premises == std::vector<std::string>{"p(||)&[a;][{a;}*]p(||)"});
    CHECK(at_loop[1].tactic == "loop");
    CHECK(at_loop[1].display_kind == DisplayKind::RuleWithInput);
    REQUIRE(at_loop[1].inputs.size() == 1);
    CHECK(at_loop[1].inputs[0].name == "j(x)");
    CHECK(at_loop[1].inputs[0].default_value == "x>=0");

    Sequent annotated = parse_sequent("x>=2, v>=0 ==> [{{?x>1; x:=x-1;} ++ {x'=v}}*@invariant(x>0)] x>=0");
    CHECK(suggest(annotated, succ(1)).back().inputs[0].default_value == "x>0");

    auto t = suggest(parse_sequent("==> true"), succ(1));
    REQUIRE(t.size() == 1);
    CHECK(t[0].tactic == "closeTrue");

    Sequent step = parse_sequent("==> x>0 -> [{?x>1; x:=x-1;} ++ {x'=v}]x>0");
    auto top = suggest(step, succ(1));
    REQUIRE(!top.empty());
    CHECK(top[0].tactic == "implyR");
    CHECK(top[0].display == "->R");
    auto inner = suggest(step, succ(1, {1}));
    std::vector<std::string> names;
    for (const auto& s : inner) names.push_back(s.tactic);
    CHECK(names == std::vector<std::string>{"choiceb", "choicebCond"});
    CHECK(suggest(parse_sequent("y>0 ==> [{x'=2} ++ x:=5;]x>=5"), succ(1)).size() == 2);
}

TEST_CASE("every suggestion applies") {
    for (const char* g : corpus::sequents()) {
        Sequent s = parse_sequent(g);
        for (Side side : {Side::Ante, Side::Succ}) {
            for (std::size_t i = 0; i < s.side(side).size(); ++i) {
                for (const auto& path : all_paths(Expr(s.side(side)[i]))) {
                    Position pos{side, static_cast<int>(i + 1), path};
                    for (const auto& sug : suggest(s, pos)) {
                        CAPTURE(g);
                        CAPTURE(pos.to_string());
                        CAPTURE(sug.tactic);
                        std::vector<std::string> in;
                        for (const auto& spec : sug.inputs) in.push_back(spec.default_value);
                        CHECK_NOTHROW(interpret(Tactic::atom(sug.tactic, in, Locator::fixed(pos)), start_proof(s)));
                    }
                }
            }
        }
    }
}

TEST_CASE("find_position") {
    CHECK(find_position("andL", parse_sequent("x>=2&v>=0 ==> [{x'=v}]x>0")) == std::optional(ante(1)));
    CHECK(find_position("implyR", parse_sequent("==> x>0 -> y>0")) == std::optional(succ(1)));
    CHECK(find_position("choiceb", parse_sequent("==> x>0 -> [{?x>1; x:=x-1;} ++ {x'=v}]x>0")) ==
          std::optional(succ(1, {1})));
    CHECK(find_position("choiceb", parse_sequent("x>0, v>=0 ==> [{?x>1; x:=x-1;} ++ {x'=v}]x>0")) ==
          std::optional(succ(1)));
    CHECK(!find_position("andR", parse_sequent("==> x>0")));
    CHECK(!find_position("QE", parse_sequent("==> x>0")));
}

TEST_CASE("random scripts never change the conclusion") {
    std::mt19937 rng(21);
    const auto& goals_list = corpus::sequents();
    int ran = 0;
    for (int i = 0; i < 100; ++i) {
        const char* g = goals_list[rng() % goals_list.size()];
        Tactic t = random_tactic(rng, 3);
        CAPTURE(g);
        CAPTURE(print_tactic(t));
        Provable p = on(g);
        try {
            Provable q = interpret(t, p);
            CHECK(q.conclusion() == p.conclusion());
            ++ran;
        } catch (const TacticError&) {
        }
    }
    CHECK(ran > 20);
}

TEST_CASE("conditional axioms discharge their condition") {
    Provable p = on("==> y>0 -> [{x'=2} ++ x:=5;]x>=5 | z>0");
    Tactic t = A("choicebCond", {}, Locator::fixed(Position::parse("1.1.0")));
    CHECK(goals(interpret(t, p)) == "==> y>0->[{x'=2}]x>=5|z>0\n");
    Provable open = on("==> y>0 -> [{x'=2} ++ x:=4;]x>=5 | z>0");
    CHECK(goals(interpret(t, open)) ==
          "==> y>0->[{x'=2}]x>=5|z>0\n==> [x:=4;]x>=5, y>0->[{x'=2}++x:=4;]x>=5|z>0\n");
}
