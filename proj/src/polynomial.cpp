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

#include "dlprover/polynomial.hpp"

#include <algorithm>

#include "dlprover/printer.hpp"

namespace dlp {

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_[{}] = c;
}

Polynomial Polynomial::var(const std::string& name) {
    Polynomial p;
    p.terms_[{{name, 1}}] = 1;
    return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant() const {
    auto it = terms_.find({});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::set<std::string> Polynomial::variables() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) out.insert(v);
    return out;
}

unsigned Polynomial::degree(const std::string& v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(v);
        if (it != m.end()) d = std::max(d, it->second);
    }
    return d;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned s = 0;
        for (const auto& [v, e] : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

Polynomial Polynomial::coefficient(const std::string& v, unsigned k) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(v);
        unsigned e = it == m.end() ? 0 : it->second;
        if (e != k) continue;
        Monomial rest = m;
        rest.erase(v);
        out.add_term(rest, c);
    }
    return out;
}

Polynomial Polynomial::substitute(const std::string& v, const Polynomial& by) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(v);
        if (it == m.end()) {
            out.add_term(m, c);
            continue;
        }
        Monomial rest = m;
        rest.erase(v);
        Polynomial part;
        part.terms_[rest] = c;
        out += part * by.pow(it->second);
    }
    return out;
}

Polynomial Polynomial::derivative(const std::string& v) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(v);
        if (it == m.end()) continue;
        Monomial rest = m;
        if (it->second == 1) rest.erase(v);
        else rest[v] = it->second - 1;
        out.add_term(rest, c * it->second);
    }
    return out;
}

std::optional<Rational> Polynomial::evaluate(const std::map<std::string, Rational>& values) const {
    Polynomial p = partial_evaluate(values);
    if (!p.is_constant()) return std::nullopt;
    return p.constant();
}

Polynomial Polynomial::partial_evaluate(const std::map<std::string, Rational>& values) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        Rational coeff = c;
        Monomial rest;
        for (const auto& [v, e] : m) {
            auto it = values.find(v);
            if (it == values.end()) {
                rest[v] = e;
                continue;
            }
            for (unsigned i = 0; i < e; ++i) coeff *= it->second;
        }
        out.add_term(rest, coeff);
    }
    return out;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Polynomial::Monomial m = ma;
            for (const auto& [v, e] : mb) m[v] += e;
            out.add_term(m, ca * cb);
        }
    return out;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial out(1);
    for (unsigned i = 0; i < n; ++i) out = out * *this;
    return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out;
    if (c == 0) return out;
    for (const auto& [m, k] : terms_) out.terms_[m] = k * c;
    return out;
}

std::string Polynomial::to_string() const { return dlp::to_string(to_term(*this)); }

Polynomial to_polynomial(const Term& t) {
    switch (t.kind()) {
        case TermKind::Number:
            return Polynomial(t.value());
        case TermKind::Variable:
            return Polynomial::var(t.name());
        case TermKind::DiffSymbol:
            return Polynomial::var(t.name() + "'");
        case TermKind::FuncApp:
            if (!t.args().empty()) throw NonPolynomial("function symbol " + t.name() + " with arguments");
            return Polynomial::var(t.name() + "()");
        case TermKind::Dot:
            throw NonPolynomial("argument placeholder");
        case TermKind::Plus:
            return to_polynomial(t.left()) + to_polynomial(t.right());
        case TermKind::Minus:
            return to_polynomial(t.left()) - to_polynomial(t.right());
        case TermKind::Times:
            return to_polynomial(t.left()) * to_polynomial(t.right());
        case TermKind::Divide: {
            Polynomial d = to_polynomial(t.right());
            if (!d.is_constant() || d.is_zero()) throw NonPolynomial("division by a non-constant or zero term");
            return to_polynomial(t.left()).scaled(Rational(1) / d.constant());
        }
        case TermKind::Neg:
            return -to_polynomial(t.child());
        case TermKind::Power:
            return to_polynomial(t.child()).pow(t.exponent());
    }
    throw NonPolynomial("unknown term");
}

namespace {

Term variable_term(const std::string& name) {
    if (name.size() > 2 && name.compare(name.size() - 2, 2, "()") == 0)
        return Term::func(name.substr(0, name.size() - 2));
    return Term::variable(name);
}

}  // namespace

Term to_term(const Polynomial& p, const std::string& last) {
    using Entry = std::pair<Polynomial::Monomial, Rational>;
    std::vector<Entry> entries(p.terms().begin(), p.terms().end());
    auto order = [&](const Polynomial::Monomial& m) {
        std::vector<std::pair<std::string, unsigned>> vs;
        unsigned total = 0;
        for (const auto& [v, e] : m) {
            total += e;
            if (v != last) vs.emplace_back(v, e);
        }
        auto it = m.find(last);
        if (it != m.end()) vs.emplace_back("\x7f" + last, it->second);
        return std::make_pair(total, vs);
    };
    std::stable_sort(entries.begin(), entries.end(),
                     [&](const Entry& a, const Entry& b) { return order(a.first) < order(b.first); });
    if (entries.empty()) return Term::number(0);
    std::optional<Term> sum;
    for (const auto& [m, c] : entries) {
        std::vector<std::pair<std::string, unsigned>> vs;
        for (const auto& [v, e] : m)
            if (v != last) vs.emplace_back(v, e);
        if (m.count(last)) vs.emplace_back(last, m.at(last));
        Rational mag = abs(c);
        bool negative = c < 0 && sum.has_value();
        Rational lead = sum ? mag : c;
        std::optional<Term> mono;
        if (vs.empty()) mono = Term::number(lead);
        else if (lead == -1) mono = std::nullopt;
        else if (lead != 1) mono = Term::number(lead);
        for (const auto& [v, e] : vs) {
            Term f = e == 1 ? variable_term(v) : Term::power(variable_term(v), e);
            mono = mono ? Term::binary(TermKind::Times, *mono, f) : f;
        }
        if (!vs.empty() && lead == -1) mono = Term::neg(*mono);
        if (!sum) sum = *mono;
        else sum = Term::binary(negative ? TermKind::Minus : TermKind::Plus, *sum, *mono);
    }
    return *sum;
}

}  // namespace dlp
