#pragma once

#include "polyinv/polynomial.hpp"

#include <vector>

namespace polyinv {

struct Factorization {
    // Distinct irreducible factors over Q, each primitive with positive leading coefficient,
    // sorted by degree then by printed form.
    std::vector<Polynomial> factors;
    // False when a size cap stopped the search; the factors are then coprime but some may
    // still be reducible.
    bool complete = true;
};

// Distinct irreducible factors of p (multiplicities dropped). Constants have none.
// Univariate parts use Zassenhaus (Cantor-Zassenhaus modulo p, Hensel lifting, subset
// recombination); several variables go through Kronecker substitution.
Factorization irreducible_factors(const Polynomial& p);

}  // namespace polyinv
