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

#ifndef DLPROVER_RATIONAL_HPP
#define DLPROVER_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace dlp {

// Exact rational numbers. All numerals in the object language use this type.
using Rational = mpq_class;

// Parses "12", "3/4" or "0.125". Returns nullopt on malformed input or zero
// denominators. Signs are not accepted.
std::optional<Rational> parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise (canonical, lowest terms).
std::string to_string(const Rational& r);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace dlp

#endif
