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

#ifndef DLPROVER_MODEL_HPP
#define DLPROVER_MODEL_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlprover/syntax.hpp"

namespace dlp {

class ModelError : public std::runtime_error {
public:
    ModelError(const std::string& message, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A model file:
//
//   ProgramVariables
//     Real x;
//     Real v;
//   End.
//   Problem
//     x>=2 & v>=0 -> [{...}*@invariant(x>0)] x>=0
//   End.
struct Model {
    std::vector<std::string> variables;
    Formula problem;
    std::vector<Formula> invariants;  // loop annotations, outside-in
    std::string source;
};

Model parse_model(std::string_view text);

}  // namespace dlp

#endif
