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

#ifndef DLPROVER_POLYNOMIAL_HPP
#define DLPROVER_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlprover/rational.hpp"
#include "dlprover/syntax.hpp"

namespace dlp {

// Multivariate polynomial with exact rational coefficients.
class Polynomial {
public:
    // Variable -> exponent, exponents > 0.
    using Monomial = std::map<std::string, unsigned>;

    Polynomial() = default;
    Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
    Polynomial(long c) : Polynomial(Rational(c)) {}
    static Polynomial var(const std::string& name);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant() const;  // coefficient of the empty monomial
    std::set<std::string> variables() const;
    unsigned degree(const std::string& v) const;
    unsigned total_degree() const;

    // Coefficient of v^k as a polynomial in the other variables.
    Polynomial coefficient(const std::string& v, unsigned k) const;
    Polynomial substitute(const std::string& v, const Polynomial& by) const;
    Polynomial derivative(const std::string& v) const;
    std::optional<Rational> evaluate(const std::map<std::string, Rational>& values) const;
    // Substitutes known values, leaving the other variables symbolic.
    Polynomial partial_evaluate(const std::map<std::string, Rational>& values) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial pow(unsigned n) const;
    Polynomial scaled(const Rational& c) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
    friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.terms_ < b.terms_; }

    std::string to_string() const;

private:
    std::map<Monomial, Rational> terms_;
    void add_term(const Monomial& m, const Rational& c);
};

class NonPolynomial : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Nullary function symbols f() become variables named "f()". Throws
// NonPolynomial on division by a non-constant, function symbols with
// arguments, or the dot term.
Polynomial to_polynomial(const Term& t);

// Monomials by increasing total degree; inside a monomial variables are
// alphabetical except that `last` (if non-empty) comes at the end.
Term to_term(const Polynomial& p, const std::string& last = "");

}  // namespace dlp

#endif
