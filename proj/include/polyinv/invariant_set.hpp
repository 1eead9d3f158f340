#pragma once

#include "polyinv/polynomial.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace polyinv {

constexpr std::size_t kDefaultMaxIter = 50;

struct InvariantSetResult {
    // Blocks: block 0 is the input, block j the new compositions of round j.
    std::vector<std::vector<Polynomial>> blocks;
    // For each polynomial of each block, the indices of the input polynomials it descends from.
    std::vector<std::vector<std::vector<std::size_t>>> origins;
    std::size_t iterations = 0;  // N: number of appended blocks

    std::vector<Polynomial> polynomials() const;
};

// Fixpoint S = {g, g.F, ..., g.F^N} with g.F^(N+1) in the radical of <S>.
InvariantSetResult invariant_set(const std::vector<Polynomial>& g, const PolyMap& F, std::size_t max_iter = kDefaultMaxIter);
// Each round composes the previous round's new polynomials with every branch.
InvariantSetResult invariant_set_branch(const std::vector<Polynomial>& g, const std::vector<PolyMap>& Fs,
                                        std::size_t max_iter = kDefaultMaxIter);

struct CheckResult {
    bool holds = true;
    std::size_t iterations = 0;
    // On failure: first defining polynomial (in x and z) that is nonzero at (a, 1), and its value.
    std::optional<Polynomial> violated;
    Rational violated_value = 0;
    // On failure, when found: the branch word leading to the first reachable state where g != 0.
    std::optional<std::vector<std::size_t>> witness_word;
    Rational witness_value = 0;
};

CheckResult check_pi(const std::vector<Rational>& a, const Polynomial& g, const std::vector<Polynomial>& hs,
                     const PolyMap& F, std::size_t max_iter = kDefaultMaxIter);
CheckResult check_pi_branch(const std::vector<Rational>& a, const Polynomial& g, const std::vector<Polynomial>& hs,
                            const std::vector<PolyMap>& Fs, std::size_t max_iter = kDefaultMaxIter);

// Simultaneous test of all candidates. Results equal elementwise check_pi: a failing batch
// refutes every candidate whose composed polynomial is nonzero at (a, 1), and the batch is
// repeated on the remaining ones until it passes.
std::vector<bool> check_pi_batch(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                                 const std::vector<Polynomial>& hs, const std::vector<PolyMap>& Fs,
                                 std::size_t max_iter = kDefaultMaxIter, std::size_t* iterations = nullptr);

// The extended context (x, z) and the map (F_i, z*h) used by the checker.
struct GuardedSystem {
    Ctx ctx;
    std::vector<PolyMap> maps;
    Polynomial z;
};
GuardedSystem guarded_system(const Ctx& x_ctx, const std::vector<Polynomial>& hs, const std::vector<PolyMap>& Fs,
                             const std::vector<std::string>& extra_before_z = {});

}  // namespace polyinv
