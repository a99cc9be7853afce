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

#ifndef DLPROVER_TACTICS_HPP
#define DLPROVER_TACTICS_HPP

#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlprover/kernel.hpp"
#include "dlprover/syntax.hpp"

namespace dlp::tactics {

// Where an atom applies: a fixed position or a search ('L, 'R, 'Rlast).
enum class LocatorKind { None, Fixed, FirstAnte, FirstSucc, LastSucc };

struct Locator {
    LocatorKind kind = LocatorKind::None;
    Position pos;  // Fixed only

    static Locator fixed(Position p) { return {LocatorKind::Fixed, std::move(p)}; }
    friend bool operator==(const Locator&, const Locator&) = default;
};

enum class TacticKind { Atom, Seq, Alt, Repeat, Branch, Nil };

struct Tactic {
    TacticKind kind = TacticKind::Nil;
    std::string name;                 // Atom
    std::vector<std::string> inputs;  // Atom: formula or term text
    Locator locator;                  // Atom
    std::vector<Tactic> children;     // Seq, Alt, Branch; Repeat has one

    static Tactic nil() { return {}; }
    static Tactic atom(std::string name, std::vector<std::string> inputs = {}, Locator loc = {});
    static Tactic seq(std::vector<Tactic> ts);
    static Tactic alt(std::vector<Tactic> ts);
    static Tactic repeat(Tactic t);
    static Tactic branch(std::vector<Tactic> ts);
    friend bool operator==(const Tactic&, const Tactic&) = default;
};

class TacticParseError : public std::runtime_error {
public:
    TacticParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Concrete syntax: `;` sequencing (also `&`), `|` alternatives, postfix `*`,
// `<(t1, ..., tn)` branching, `nil`, atoms `name(args)` where args are quoted
// formulas, signed positions like -1 or 1.0.1, and locators 'L 'R 'Rlast.
Tactic parse_tactic(std::string_view text);
std::string print_tactic(const Tactic& t);

// A failed tactic, with the subgoal and position involved when known.
class TacticError : public std::runtime_error {
public:
    TacticError(const std::string& message, std::optional<std::size_t> goal = std::nullopt,
                std::optional<Position> pos = std::nullopt)
        : std::runtime_error(message), goal_(goal), pos_(std::move(pos)) {}
    const std::optional<std::size_t>& goal() const { return goal_; }
    const std::optional<Position>& position() const { return pos_; }

private:
    std::optional<std::size_t> goal_;
    std::optional<Position> pos_;
};

// One atom applied to one subgoal, replaced by `premises` subgoals starting
// at the same index. The atom carries its resolved position.
struct StepEvent {
    std::size_t goal;
    Tactic atom;
    std::size_t premises;
    std::vector<Sequent> produced;  // the premises themselves
};

struct Options {
    std::size_t step_budget = 10000;
    double timeout_seconds = 0;      // wall clock for the whole run; 0: none
    double qe_timeout_seconds = 0;   // per QE call; 0: none
    const std::atomic<bool>* cancel = nullptr;
};

class Interpreter {
public:
    explicit Interpreter(Options opts = {}) : opts_(opts) {}

    // Applies t to every open subgoal of p.
    Provable run(const Tactic& t, const Provable& p);
    // Applies t to one subgoal of p.
    Provable run_on(const Tactic& t, const Provable& p, std::size_t goal);

    // Called for each top-level atom application (built-ins count as one).
    void on_step(std::function<void(const StepEvent&)> f) { listener_ = std::move(f); }

    std::size_t steps() const { return steps_; }
    // Clash errors that an alternative recovered from.
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

    struct Range {
        std::size_t begin;
        std::size_t count;
    };

private:
    Options opts_;
    std::size_t steps_ = 0;
    std::vector<std::string> diagnostics_;
    std::function<void(const StepEvent&)> listener_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;

    Provable eval(const Tactic& t, const Provable& p, Range& r);
    Provable atom_on_range(const Tactic& t, const Provable& p, Range& r);
    void tick();
    void start();

    friend Provable apply_atom(Interpreter&, const Provable&, std::size_t, const Tactic&, Tactic*);
};

// Applies one atom to one subgoal; fills `resolved` with the atom as it
// should be recorded (search locators replaced by the position used).
Provable apply_atom(Interpreter& in, const Provable& p, std::size_t goal, const Tactic& atom,
                    Tactic* resolved = nullptr);

// Convenience wrappers over a fresh interpreter.
Provable interpret(const Tactic& t, const Provable& p, const Options& opts = {});
Provable prop(const Provable& p, std::size_t goal);
Provable unfold(const Provable& p, std::size_t goal);
Provable loop_tactic(const Provable& p, std::size_t goal, const Position& pos,
                     const std::optional<Formula>& invariant);
Provable auto_tactic(const Provable& p, const Options& opts = {});

// Names of atoms accepted by the interpreter.
const std::vector<std::string>& atom_names();
// Atoms that take a position.
bool is_positional(const std::string& name);

struct InputSpec {
    std::string name;  // e.g. "j(x)"
    std::string kind;  // "formula"
    std::string default_value;
};

struct Suggestion {
    std::string tactic;
    std::string display;  // e.g. "[++]", "->R"
    DisplayKind display_kind = DisplayKind::Rule;
    std::string conclusion;
    std::vector<std::string> premises;
    std::vector<InputSpec> inputs;
};

// Applicable tactics at pos: axioms, then rules, then tactics with input.
std::vector<Suggestion> suggest(const Sequent& goal, const Position& pos);

// First position where the tactic applies: antecedent then succedent,
// formulas left to right, subformulas outside-in.
std::optional<Position> find_position(const std::string& tactic, const Sequent& goal,
                                      const std::vector<std::string>& inputs = {});

}  // namespace dlp::tactics

#endif
