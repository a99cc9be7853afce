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

#ifndef DLPROVER_PARSER_HPP
#define DLPROVER_PARSER_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dlprover/syntax.hpp"

namespace dlp {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column, std::set<std::string> expected);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::set<std::string>& expected() const { return expected_; }

private:
    int line_;
    int column_;
    std::set<std::string> expected_;
};

Formula parse_formula(std::string_view text);
Program parse_program(std::string_view text);
Term parse_term(std::string_view text);
// "F1, F2 ==> G1, G2"; either side may be empty.
Sequent parse_sequent(std::string_view text);

}  // namespace dlp

#endif
