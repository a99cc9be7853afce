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
#include "dlprover/semantics.hpp"
#include "support/oracles.hpp"

using namespace dlp;

namespace {

Term var(const char* n) { return Term::variable(n); }
Term num(long v) { return Term::number(v); }
Formula cmp(FormulaKind k, Term a, Term b) { return Formula::compare(k, std::move(a), std::move(b)); }

Formula escalator() {
    Term x = var("x");
    Formula init = Formula::conj(cmp(FormulaKind::GreaterEqual, x, num(2)), cmp(FormulaKind::GreaterEqual, var("v"), num(0)));
    Program step = Program::compose(Program::test(cmp(FormulaKind::Greater, x, num(1))),
                                    Program::assign("x", Term::binary(TermKind::Minus, x, num(1))));
    Program flow = Program::ode({{"x", var("v")}});
    Program loop = Program::loop(Program::choice(step, flow));
    return Formula::implies(init, Formula::box(loop, cmp(FormulaKind::GreaterEqual, x, num(0))));
}

}  // namespace

TEST_CASE("escalator model parses to the expected tree") {
    Formula f = parse_formula("x>=2 & v>=0 -> [{{?x>1; x:=x-1;} ++ {x'=v}}*] x>=0");
    CHECK(f == escalator());
    CHECK(to_string(f) == "x>=2&v>=0->[{?x>1;x:=x-1;++{x'=v}}*]x>=0");
}

TEST_CASE("atoms and associativity") {
    CHECK(parse_formula("true") == Formula::truth());
    CHECK(parse_formula("false") == Formula::falsity());
    Formula a = cmp(FormulaKind::Greater, var("x"), num(0));
    Formula b = cmp(FormulaKind::Greater, var("y"), num(0));
    Formula c = cmp(FormulaKind::Greater, var("z"), num(0));
    CHECK(parse_formula("x>0 -> y>0 -> z>0") == Formula::implies(a, Formula::implies(b, c)));
    CHECK(parse_formula("x>0 | y>0 | z>0") == Formula::disj(Formula::disj(a, b), c));
    CHECK(parse_formula("x>0 <-> y>0 <-> z>0") == Formula::equiv(Formula::equiv(a, b), c));
    CHECK(parse_formula("!x>0 & y>0") == Formula::conj(Formula::negation(a), b));
    CHECK(parse_formula("x>0 & y>0 | z>0 -> x>0") == Formula::implies(Formula::disj(Formula::conj(a, b), c), a));
    CHECK(to_string(Formula::implies(Formula::implies(a, b), c)) == "(x>0->y>0)->z>0");
}

TEST_CASE("programs") {
    Program p = parse_program("?x>1; x:=x-1;");
    CHECK(p == Program::compose(Program::test(cmp(FormulaKind::Greater, var("x"), num(1))),
                                Program::assign("x", Term::binary(TermKind::Minus, var("x"), num(1)))));
    CHECK(parse_program("x'=v") == Program::ode({{"x", var("v")}}));
    CHECK(parse_program("{x'=v, v'=a & v>=0}") ==
          Program::ode({{"x", var("v")}, {"v", var("a")}}, cmp(FormulaKind::GreaterEqual, var("v"), num(0))));
    CHECK(parse_program("a;b") == Program::compose(Program::constant("a"), Program::constant("b")));
    Program annotated = parse_program("{x:=x+1;}*@invariant(x>0)");
    REQUIRE(annotated.kind() == ProgramKind::Loop);
    REQUIRE(annotated.invariant());
    CHECK(*annotated.invariant() == cmp(FormulaKind::Greater, var("x"), num(0)));
    CHECK(to_string(annotated) == "{x:=x+1;}*@invariant(x>0)");
    Program nested = Program::compose(Program::compose(Program::constant("a"), Program::constant("b")),
                                      Program::constant("c"));
    CHECK(to_string(nested) == "{a;b;}c;");
    CHECK(parse_program(to_string(nested)) == nested);
    CHECK_THROWS_AS(parse_program("{x'=1, x'=2}"), ParseError);
}

TEST_CASE("terms") {
    CHECK(parse_term("x") == var("x"));
    CHECK(to_string(Term::number(Rational(1, 2))) == "1/2");
    CHECK(parse_term("1/2") == Term::number(Rational(1, 2)));
    CHECK(parse_term("1 /2") == Term::binary(TermKind::Divide, num(1), num(2)));
    CHECK(parse_term("0.25") == Term::number(Rational(1, 4)));
    CHECK(to_string(Term::neg(Term::binary(TermKind::Plus, var("x"), var("y")))) == "-(x+y)");
    CHECK(parse_term("-(x+y)") == Term::neg(Term::binary(TermKind::Plus, var("x"), var("y"))));
    CHECK(parse_term("-2") == num(-2));
    CHECK(parse_term("-2^2") == Term::neg(Term::power(num(2), 2)));
    CHECK(to_string(Term::neg(num(2))) == "-(2)");
    CHECK(to_string(Term::power(num(-2), 2)) == "(-2)^2");
    CHECK(to_string(Term::binary(TermKind::Divide, Term::power(var("x"), 2), num(3))) == "x^2 /3");
    CHECK(parse_term("f()") == Term::func("f"));
    CHECK(parse_term("x-y-z") ==
          Term::binary(TermKind::Minus, Term::binary(TermKind::Minus, var("x"), var("y")), var("z")));
}

TEST_CASE("predicates and schema symbols") {
    CHECK(parse_formula("p(x)") == Formula::pred("p", {var("x")}));
    CHECK(parse_formula("q()") == Formula::pred("q"));
    CHECK(parse_formula("p(||)") == Formula::predicational("p"));
    CHECK(parse_formula("f(x)>0") == cmp(FormulaKind::Greater, Term::func("f", {var("x")}), num(0)));
    CHECK(parse_formula("(x+1)>0") == cmp(FormulaKind::Greater, Term::binary(TermKind::Plus, var("x"), num(1)), num(0)));
    CHECK(parse_formula("((x>0))") == cmp(FormulaKind::Greater, var("x"), num(0)));
}

TEST_CASE("syntax errors carry location and expectations") {
    try {
        parse_formula("x>0 &\n  & y>0");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
        CHECK_FALSE(e.expected().empty());
    }
    CHECK_THROWS_AS(parse_formula("x' > 0"), ParseError);
    CHECK_THROWS_AS(parse_formula("x > 0 )"), ParseError);
    CHECK_THROWS_AS(parse_term("x^y"), ParseError);
    CHECK_THROWS_AS(parse_formula("[x:=1 y:=2]x>0"), ParseError);
}

TEST_CASE("sequents") {
    Sequent s = parse_sequent("x>0, v>=0 ==> [x:=x-1;]x>0");
    CHECK(s.ante.size() == 2);
    CHECK(s.succ.size() == 1);
    CHECK(to_string(s) == "x>0, v>=0 ==> [x:=x-1;]x>0");
    CHECK(to_string(parse_sequent("==> true")) == "==> true");
    CHECK(parse_sequent(to_string(s)) == s);
}

TEST_CASE("fuzzed trees round-trip through the printer and parser") {
    oracle::Generator gen(20261015);
    for (int i = 0; i < 1000; ++i) {
        Formula f = gen.formula(1 + gen.pick(6));
        std::string text = to_string(f);
        INFO(text);
        Formula back = parse_formula(text);
        REQUIRE(back == f);
        CHECK(to_string(back) == text);
    }
    for (int i = 0; i < 200; ++i) {
        Term t = gen.term(gen.pick(6));
        INFO(to_string(t));
        REQUIRE(parse_term(to_string(t)) == t);
        Program p = gen.program(gen.pick(5));
        INFO(to_string(p));
        REQUIRE(parse_program(to_string(p)) == p);
    }
}

TEST_CASE("positions resolve and self-replacement is the identity") {
    Formula f = escalator();
    CHECK(as_formula(subexpr_at(Expr(f), {1})).kind() == FormulaKind::Box);
    CHECK(as_formula(subexpr_at(Expr(f), {})) == f);
    Formula g = parse_formula("x>0 & [x:=7]x>5");
    CHECK(as_formula(subexpr_at(Expr(g), {1})) == parse_formula("[x:=7]x>5"));
    CHECK_THROWS_AS(subexpr_at(Expr(g), {2}), PositionError);

    Sequent s{{}, {f}};
    CHECK(as_formula(subexpr_at(s, Position::parse("1.1"))).kind() == FormulaKind::Box);
    CHECK(Position::parse("-2.0.1") == ante(2, {0, 1}));
    CHECK(ante(2, {0, 1}).to_string() == "-2.0.1");

    oracle::Generator gen(7);
    for (int i = 0; i < 100; ++i) {
        Formula h = gen.formula(4);
        for (const auto& path : all_paths(h)) {
            Expr sub = subexpr_at(Expr(h), path);
            REQUIRE(replace_at(h, path, sub) == h);
        }
    }
}

TEST_CASE("rendering spans address the printed subexpressions") {
    oracle::Generator gen(99);
    for (int i = 0; i < 100; ++i) {
        Formula f = gen.formula(4);
        Rendering r = render(f);
        CHECK(r.text == to_string(f));
        CHECK(r.spans.size() == all_paths(f).size());
        for (const auto& span : r.spans) {
            Expr sub = subexpr_at(Expr(f), span.path);
            // Parenthesized children are rendered without their parentheses.
            REQUIRE(r.text.substr(span.begin, span.end - span.begin) == to_string(sub));
        }
    }
}

TEST_CASE("free and bound variables") {
    CHECK(free_vars(parse_formula("[x:=x-1;]x>0")) == VarSet{"x"});
    CHECK(bound_vars(parse_formula("[{x'=v}]x>0")) == VarSet{"x", "x'"});
    CHECK(free_vars(parse_formula("\\forall t (x=x0+v*t -> x>0)")) == VarSet{"x", "x0", "v"});
    CHECK(bound_vars(parse_formula("\\forall t (x=x0+v*t -> x>0)")) == VarSet{"t"});
    CHECK(free_vars(parse_formula("[a;]x>0")).is_all());
    CHECK(free_vars(parse_formula("p(||)")).is_all());

    struct Case {
        const char* text;
        VarSet fv;
        VarSet bv;
    };
    const Case corpus[] = {
        {"x>0", {"x"}, {}},
        {"[x:=1;]x>0", {}, {"x"}},
        {"[x:=y;]x>y", {"y"}, {"x"}},
        {"[x:=1;++y:=2;]x>y", {"x", "y"}, {"x", "y"}},
        {"[x:=1;y:=x;]y>z", {"z"}, {"x", "y"}},
        {"[?x>0;]y>0", {"x", "y"}, {}},
        {"[{x:=x+1;}*]x>0", {"x"}, {"x"}},
        {"[{x'=v}]x>0", {"x", "v"}, {"x", "x'"}},
        {"[{x'=v,v'=a&v>=0}]x>0", {"x", "v", "a"}, {"x", "x'", "v", "v'"}},
        {"\\exists y y>x", {"x"}, {"y"}},
        {"\\forall x x>0", {}, {"x"}},
        {"\\forall x x>0 & x<1", {"x"}, {"x"}},
        {"[x:=1;][y:=x;]y>0", {}, {"x", "y"}},
        {"[{x:=1;}*]x>0", {"x"}, {"x"}},
        {"[y:=z;]\\forall z z>y", {"z"}, {"y", "z"}},
        {"[{?x>0;x:=x-1;}++{x'=v}]x>0", {"x", "v"}, {"x", "x'"}},
        {"[x:=x;]true", {"x"}, {"x"}},
        {"!(x>0 <-> [y:=2;]y>w)", {"x", "w"}, {"y"}},
        {"f()>x", {"x"}, {}},
        {"[x:=1;?y>x;]z>0", {"y", "z"}, {"x"}},
    };
    for (const auto& c : corpus) {
        Formula f = parse_formula(c.text);
        INFO(c.text);
        CHECK(free_vars(f) == c.fv);
        CHECK(bound_vars(f) == c.bv);
    }
}

TEST_CASE("free-variable replacement avoids capture") {
    std::map<std::string, Term> m{{"x", var("x0")}};
    CHECK(substitute_free(parse_formula("x>0 & [y:=x;]y>x"), m) == parse_formula("x0>0 & [y:=x0;]y>x0"));
    CHECK(substitute_free(parse_formula("[x:=x+1;]x>0"), m) == parse_formula("[x:=x0+1;]x>0"));
    CHECK(substitute_free(parse_formula("\\forall x x>0"), m) == parse_formula("\\forall x x>0"));
    CHECK_THROWS_AS(substitute_free(parse_formula("\\forall x0 x>x0"), m), CaptureError);
    CHECK_THROWS_AS(substitute_free(parse_formula("[x:=1;++y:=2;]x>0"), m), CaptureError);
    CHECK_THROWS_AS(substitute_free(parse_formula("[{x'=1}]x>0"), m), CaptureError);
    CHECK_THROWS_AS(substitute_free(parse_formula("[{x:=x+1;}*]x>0"), m), CaptureError);
    CHECK(fresh_name("x0", {"x0", "x0_1"}) == "x0_2");
}
