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

#include "dlprover/rational.hpp"

#include <cctype>

namespace dlp {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class n(std::string(num), 10);
        mpz_class d(std::string(den), 10);
        if (d == 0) return std::nullopt;
        Rational r(n, d);
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        mpz_class n(std::string(whole) + std::string(frac), 10);
        Rational r(n, scale);
        r.canonicalize();
        return r;
    }
    if (!all_digits(text)) return std::nullopt;
    return Rational(mpz_class(std::string(text), 10));
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace dlp
