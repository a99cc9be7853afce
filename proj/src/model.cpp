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

#include "dlprover/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "dlprover/parser.hpp"
#include "dlprover/semantics.hpp"

namespace dlp {

namespace {

// Blanks out comments, keeping line structure.
std::string strip_comments(std::string_view text) {
    std::string out(text);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out.compare(i, 2, "//") == 0) {
            while (i < out.size() && out[i] != '\n') out[i++] = ' ';
        } else if (out.compare(i, 2, "/*") == 0) {
            while (i < out.size() && out.compare(i, 2, "*/") != 0) {
                if (out[i] != '\n') out[i] = ' ';
                ++i;
            }
            if (i < out.size()) out[i] = out[i + 1] = ' ';
        }
    }
    return out;
}

class Scanner {
public:
    explicit Scanner(const std::string& s) : s_(s) {}

    int line() const { return 1 + static_cast<int>(std::count(s_.begin(), s_.begin() + static_cast<long>(i_), '\n')); }
    std::size_t offset() const { return i_; }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool at_end() {
        skip();
        return i_ >= s_.size();
    }
    bool keyword(std::string_view k) {
        skip();
        if (s_.compare(i_, k.size(), k) != 0) return false;
        std::size_t e = i_ + k.size();
        if (e < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[e])) || s_[e] == '_')) return false;
        i_ = e;
        return true;
    }
    void expect(std::string_view k) {
        if (!keyword(k)) throw ModelError("expected " + std::string(k), line());
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip();
        std::size_t b = i_;
        if (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (b == i_) throw ModelError("expected a variable name", line());
        return s_.substr(b, i_ - b);
    }
    // Text up to the next "End." at the start of a token.
    std::string until_end() {
        std::size_t b = i_;
        for (std::size_t j = i_; j < s_.size(); ++j) {
            bool boundary = j == 0 || std::isspace(static_cast<unsigned char>(s_[j - 1]));
            if (boundary && s_.compare(j, 4, "End.") == 0) {
                i_ = j + 4;
                return s_.substr(b, j - b);
            }
        }
        throw ModelError("missing End.", line());
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

void collect_invariants(const Expr& e, std::vector<Formula>& out) {
    if (const auto* p = std::get_if<Program>(&e); p && p->kind() == ProgramKind::Loop && p->invariant())
        out.push_back(*p->invariant());
    for (const auto& c : children(e)) collect_invariants(c, out);
}

}  // namespace

Model parse_model(std::string_view text) {
    std::string clean = strip_comments(text);
    Scanner sc(clean);
    std::vector<std::string> vars;
    std::set<std::string> declared;
    if (sc.keyword("ProgramVariables")) {
        while (!sc.keyword("End.")) {
            if (sc.at_end()) throw ModelError("missing End. after ProgramVariables", sc.line());
            sc.expect("Real");
            do {
                int line = sc.line();
                std::string v = sc.ident();
                if (!declared.insert(v).second) throw ModelError("variable " + v + " declared twice", line);
                vars.push_back(v);
            } while (sc.eat(','));
            if (!sc.eat(';')) throw ModelError("expected ;", sc.line());
        }
    }
    sc.expect("Problem");
    int first_line = sc.line();
    std::string body = sc.until_end();
    if (!sc.at_end()) throw ModelError("unexpected text after the problem", sc.line());

    std::optional<Formula> problem;
    try {
        problem = parse_formula(body);
    } catch (const ParseError& e) {
        // Lines of the problem text count from the Problem keyword.
        throw ModelError(e.what(), first_line + e.line() - 1);
    }
    if (!declared.empty()) {
        VarSet fv = free_vars(*problem);
        for (const auto& v : fv.names()) {
            std::string base = v.back() == '\'' ? v.substr(0, v.size() - 1) : v;
            if (!declared.count(base)) throw ModelError("undeclared variable " + base, first_line);
        }
    }
    Model m{vars, *problem, {}, std::string(text)};
    collect_invariants(Expr(m.problem), m.invariants);
    return m;
}

}  // namespace dlp
