#pragma once

#include "polyinv/polynomial.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polyinv {

enum class GuardKind {
    NonZero,      // loop continues while poly != 0
    Zero,         // algebraic loop: continues while poly == 0
    Positive,     // stored only
    NonNegative,  // stored only
};

struct Guard {
    Polynomial poly;
    GuardKind kind;
};

struct LoopProgram {
    Ctx vars;
    std::optional<std::vector<Rational>> init;  // nothing means symbolic
    std::vector<Guard> guards;
    std::vector<PolyMap> branches;

    std::size_t n() const { return vars->size(); }
    bool symbolic() const { return !init.has_value(); }
    const std::vector<Rational>& concrete_init() const;
    std::vector<Polynomial> guards_of(GuardKind kind) const;
    bool has_inequality_guards() const;
};

// Line-oriented format:
//   vars x1 x2 ...
//   init v1 v2 ... | init symbolic
//   guard <poly> [!= 0 | == 0 | > 0 | >= 0]
//   branch:
//   x1 <- <poly>   (one line per variable)
// '#' starts a comment.
LoopProgram parse_loop(std::string_view text);
LoopProgram load_loop(const std::string& path);
std::string print_loop(const LoopProgram& L);

// Names the program may not use because algorithms append them as extension variables.
bool is_reserved_name(const std::string& name);

struct Trajectory {
    std::vector<std::vector<Rational>> points;
    std::vector<Rational> guard_values;  // product of the != 0 guards at each point
    bool exited = false;                 // a guard vanished, the last point is where the loop stopped
};

// Follows schedule[k] as the branch taken at step k.
Trajectory unroll(const LoopProgram& L, const std::vector<Rational>& a, const std::vector<std::size_t>& schedule);

std::vector<Rational> apply_map(const PolyMap& F, const std::vector<Rational>& point);

}  // namespace polyinv
