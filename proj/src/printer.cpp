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

#include "dlprover/printer.hpp"

#include <cctype>

namespace dlp {

namespace {

// Binding strength, higher binds tighter.
int term_prec(const Term& t) {
    switch (t.kind()) {
        case TermKind::Plus:
        case TermKind::Minus:
            return 1;
        case TermKind::Times:
        case TermKind::Divide:
            return 2;
        case TermKind::Neg:
            return 3;
        case TermKind::Number:
            return t.value() < 0 ? 3 : 5;
        case TermKind::Power:
            return 4;
        default:
            return 5;
    }
}

int formula_prec(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Equiv:
            return 1;
        case FormulaKind::Imply:
            return 2;
        case FormulaKind::Or:
            return 3;
        case FormulaKind::And:
            return 4;
        default:
            return 5;
    }
}

const char* term_op(TermKind k) {
    switch (k) {
        case TermKind::Plus:
            return "+";
        case TermKind::Minus:
            return "-";
        case TermKind::Times:
            return "*";
        default:
            return "/";
    }
}

const char* formula_op(FormulaKind k) {
    switch (k) {
        case FormulaKind::Equal:
            return "=";
        case FormulaKind::NotEqual:
            return "!=";
        case FormulaKind::Less:
            return "<";
        case FormulaKind::LessEqual:
            return "<=";
        case FormulaKind::Greater:
            return ">";
        case FormulaKind::GreaterEqual:
            return ">=";
        case FormulaKind::And:
            return "&";
        case FormulaKind::Or:
            return "|";
        case FormulaKind::Imply:
            return "->";
        default:
            return "<->";
    }
}

bool ends_with_digit(const std::string& s) {
    return !s.empty() && std::isdigit(static_cast<unsigned char>(s.back()));
}

class Printer {
public:
    explicit Printer(std::vector<Span>* spans) : spans_(spans) {}

    std::string out;

    void term(const Term& t) {
        std::size_t begin = open();
        switch (t.kind()) {
            case TermKind::Variable:
                out += t.name();
                break;
            case TermKind::DiffSymbol:
                out += t.name() + "'";
                break;
            case TermKind::Number:
                out += to_string(t.value());
                break;
            case TermKind::Dot:
                out += ".";
                break;
            case TermKind::FuncApp:
                out += t.name() + "(";
                for (std::size_t i = 0; i < t.args().size(); ++i) {
                    if (i) out += ",";
                    child(i, [&] { term(t.args()[i]); });
                }
                out += ")";
                break;
            case TermKind::Neg: {
                out += "-";
                const Term& c = t.child();
                bool paren = term_prec(c) < 3 || c.kind() == TermKind::Number;
                child(0, [&] { wrap(paren, [&] { term(c); }); });
                break;
            }
            case TermKind::Power: {
                const Term& b = t.child();
                bool paren = term_prec(b) < 5 || b.kind() == TermKind::Power ||
                             (b.kind() == TermKind::Number && !is_integer(b.value()));
                child(0, [&] { wrap(paren, [&] { term(b); }); });
                out += "^" + std::to_string(t.exponent());
                break;
            }
            default: {
                int p = term_prec(t);
                child(0, [&] { wrap(term_prec(t.left()) < p, [&] { term(t.left()); }); });
                std::size_t op_at = out.size();
                out += term_op(t.kind());
                bool rparen = term_prec(t.right()) <= p;
                std::size_t rhs_at = out.size();
                child(1, [&] { wrap(rparen, [&] { term(t.right()); }); });
                // "1/2" lexes as one literal, so keep a real division of
                // digits apart.
                if (t.kind() == TermKind::Divide && ends_with_digit(out.substr(0, op_at)) && rhs_at < out.size() &&
                    std::isdigit(static_cast<unsigned char>(out[rhs_at]))) {
                    out.insert(op_at, " ");
                    shift_spans_after(op_at, 1);
                }
            }
        }
        close(begin);
    }

    void program(const Program& p) {
        std::size_t begin = open();
        switch (p.kind()) {
            case ProgramKind::Constant:
                out += p.name() + ";";
                break;
            case ProgramKind::Assign:
                out += p.name() + ":=";
                child(0, [&] { term(p.rhs()); });
                out += ";";
                break;
            case ProgramKind::Test:
                out += "?";
                child(0, [&] { formula(p.condition()); });
                out += ";";
                break;
            case ProgramKind::Ode: {
                out += "{";
                const auto& eqs = p.equations();
                for (std::size_t i = 0; i < eqs.size(); ++i) {
                    if (i) out += ",";
                    out += eqs[i].var + "'=";
                    child(i, [&] { term(eqs[i].rhs); });
                }
                if (p.domain()) {
                    out += "&";
                    child(eqs.size(), [&] { formula(*p.domain()); });
                }
                out += "}";
                break;
            }
            case ProgramKind::Choice: {
                bool lparen = p.left().kind() == ProgramKind::Choice;
                child(0, [&] { braces(lparen, [&] { program(p.left()); }); });
                out += "++";
                child(1, [&] { program(p.right()); });
                break;
            }
            case ProgramKind::Compose: {
                bool lparen = p.left().kind() == ProgramKind::Choice || p.left().kind() == ProgramKind::Compose;
                child(0, [&] { braces(lparen, [&] { program(p.left()); }); });
                bool rparen = p.right().kind() == ProgramKind::Choice;
                child(1, [&] { braces(rparen, [&] { program(p.right()); }); });
                break;
            }
            case ProgramKind::Loop:
                out += "{";
                child(0, [&] { program(p.body()); });
                out += "}*";
                if (p.invariant()) {
                    out += "@invariant(";
                    auto* saved = spans_;
                    spans_ = nullptr;
                    formula(*p.invariant());
                    spans_ = saved;
                    out += ")";
                }
                break;
        }
        close(begin);
    }

    void formula(const Formula& f) {
        std::size_t begin = open();
        switch (f.kind()) {
            case FormulaKind::True:
                out += "true";
                break;
            case FormulaKind::False:
                out += "false";
                break;
            case FormulaKind::Not:
                out += "!";
                child(0, [&] { wrap(formula_prec(f.child()) < 5, [&] { formula(f.child()); }); });
                break;
            case FormulaKind::Forall:
            case FormulaKind::Exists:
                out += f.kind() == FormulaKind::Forall ? "\\forall " : "\\exists ";
                out += f.name() + " ";
                child(0, [&] { wrap(formula_prec(f.body()) < 5, [&] { formula(f.body()); }); });
                break;
            case FormulaKind::Box:
                out += "[";
                child(0, [&] { program(f.program()); });
                out += "]";
                child(1, [&] { wrap(formula_prec(f.body()) < 5, [&] { formula(f.body()); }); });
                break;
            case FormulaKind::PredApp:
                out += f.name() + "(";
                if (f.all_args()) out += "||";
                for (std::size_t i = 0; i < f.terms().size(); ++i) {
                    if (i) out += ",";
                    child(i, [&] { term(f.terms()[i]); });
                }
                out += ")";
                break;
            default:
                if (is_comparison(f.kind())) {
                    child(0, [&] { term(f.lhs()); });
                    out += formula_op(f.kind());
                    child(1, [&] { term(f.rhs()); });
                } else {
                    int p = formula_prec(f);
                    bool right_assoc = f.kind() == FormulaKind::Imply;
                    int lp = formula_prec(f.left());
                    int rp = formula_prec(f.right());
                    bool lparen = lp < p || (lp == p && right_assoc);
                    bool rparen = rp < p || (rp == p && !right_assoc);
                    child(0, [&] { wrap(lparen, [&] { formula(f.left()); }); });
                    out += formula_op(f.kind());
                    child(1, [&] { wrap(rparen, [&] { formula(f.right()); }); });
                }
        }
        close(begin);
    }

private:
    std::vector<Span>* spans_;
    PosInExpr path_;
    std::vector<std::size_t> open_spans_;

    std::size_t open() {
        if (!spans_) return 0;
        spans_->push_back({path_, out.size(), out.size()});
        return spans_->size() - 1;
    }

    void close(std::size_t index) {
        if (spans_) (*spans_)[index].end = out.size();
    }

    void shift_spans_after(std::size_t at, std::size_t by) {
        if (!spans_) return;
        for (auto& s : *spans_) {
            if (s.begin > at) s.begin += by;
            if (s.end > at) s.end += by;
        }
    }

    template <typename F>
    void child(std::size_t i, F&& body) {
        path_.push_back(static_cast<int>(i));
        body();
        path_.pop_back();
    }

    template <typename F>
    void wrap(bool paren, F&& body) {
        if (paren) out += "(";
        body();
        if (paren) out += ")";
    }

    template <typename F>
    void braces(bool paren, F&& body) {
        if (paren) out += "{";
        body();
        if (paren) out += "}";
    }
};

}  // namespace

std::string to_string(const Term& t) {
    Printer p(nullptr);
    p.term(t);
    return p.out;
}

std::string to_string(const Program& prog) {
    Printer p(nullptr);
    p.program(prog);
    return p.out;
}

std::string to_string(const Formula& f) {
    Printer p(nullptr);
    p.formula(f);
    return p.out;
}

std::string to_string(const Expr& e) {
    return std::visit([](const auto& x) { return to_string(x); }, e);
}

std::string to_string(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.ante.size(); ++i) {
        if (i) out += ", ";
        out += to_string(s.ante[i]);
    }
    out += s.ante.empty() ? "==>" : " ==>";
    for (std::size_t i = 0; i < s.succ.size(); ++i) out += (i ? ", " : " ") + to_string(s.succ[i]);
    return out;
}

Rendering render(const Formula& f) {
    Rendering r;
    Printer p(&r.spans);
    p.formula(f);
    r.text = std::move(p.out);
    return r;
}

}  // namespace dlp
