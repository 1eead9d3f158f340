#pragma once

#include "polyinv/invariant_set.hpp"

#include <optional>
#include <vector>

namespace polyinv {

enum class Verdict { NeverTerminates, Terminates };

struct TerminationVerdict {
    Verdict verdict = Verdict::NeverTerminates;
    std::optional<Polynomial> witness;  // defining polynomial of the invariant set nonzero at a
    Rational witness_value = 0;
    std::size_t iterations = 0;
    std::vector<Polynomial> invariant_set;
};

// Loop "while g_1 = ... = g_k = 0 do x <- F(x)" started at a.
TerminationVerdict never_terminates_algebraic(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                                              const PolyMap& F, std::size_t max_iter = kDefaultMaxIter);

const char* to_string(Verdict v);

}  // namespace polyinv
