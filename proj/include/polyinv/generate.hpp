#pragma once

#include "polyinv/invariant_set.hpp"
#include "polyinv/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyinv {

struct AnsatzMatrix {
    PolyMatrix matrix;              // N x m, entries in the program variables
    std::vector<Polynomial> gens;   // g_1..g_m
    std::size_t iterations = 0;
};

AnsatzMatrix compute_matrix(const std::vector<Polynomial>& gs, const std::vector<Polynomial>& hs, const PolyMap& F,
                            std::size_t max_iter = kDefaultMaxIter);
AnsatzMatrix compute_matrix_branch(const std::vector<Polynomial>& gs, const std::vector<Polynomial>& hs,
                                   const std::vector<PolyMap>& Fs, std::size_t max_iter = kDefaultMaxIter);

// Initial values are named a1..an in `a_ctx`; templates live in (x1..xn, a1..an).
struct ConstructibleCell {
    std::vector<Polynomial> equations;
    Polynomial inequation;
    std::size_t rank = 0;
    PolyMatrix kernel;                    // rational functions of a
    std::vector<Polynomial> templates;    // sum_i g_i(x) * Z_ik(a), one per kernel column

    bool contains(std::span<const Rational> a) const;
    // Templates with a substituted, in the program context.
    std::vector<Polynomial> instantiate(std::span<const Rational> a, const Ctx& x_ctx) const;
};

struct ClassResult {
    AnsatzMatrix ansatz;
    Ctx a_ctx;
    Ctx xa_ctx;
    std::vector<ConstructibleCell> cells;
};

ClassResult truncated_class(const std::vector<Polynomial>& gs, const std::vector<Polynomial>& hs,
                            const std::vector<PolyMap>& Fs, std::size_t max_iter = kDefaultMaxIter);

struct ConstraintSet {
    std::vector<LinearForm> forms;
    std::size_t depth = 0;
    bool word_cap_hit = false;
};

// Forms prod(guards along the word) * sum_i y_i g_i(F_word(a)) for every branch word of
// length <= K (including the empty word). Zero forms are dropped.
ConstraintSet sufficient_constraints(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                                     const std::vector<Polynomial>& hs, const std::vector<PolyMap>& Fs, std::size_t K,
                                     std::size_t word_cap = 10000);

enum class Provenance { BatchCheck, MatrixStage };

struct InvariantBasis {
    std::vector<Polynomial> basis;
    std::vector<Provenance> provenance;
    std::vector<Polynomial> gens;
    std::optional<unsigned> degree;
    bool stage3_used = false;
    std::size_t iterations = 0;        // fixpoint rounds of the accepting batch check
    std::size_t constraint_depth = 0;  // K actually used for the exact constraints
    std::string stage1;                // "exact", "modular", "exact-truncated", "maximal-ideal"
    bool word_cap_hit = false;

    std::size_t dimension() const { return basis.size(); }
};

struct TruncatedOptions {
    std::size_t max_iter = kDefaultMaxIter;
    std::optional<std::size_t> depth;         // default: number of generators
    std::size_t word_cap = 10000;
    std::size_t exact_bit_budget = 4096;      // per coordinate, beyond which Stage 1 goes modular
    bool allow_modular = true;
};

InvariantBasis truncated_ideal(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                               const std::vector<Polynomial>& hs, const PolyMap& F, const TruncatedOptions& opts = {});
InvariantBasis truncated_ideal_branch(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                                      const std::vector<Polynomial>& hs, const std::vector<PolyMap>& Fs,
                                      const TruncatedOptions& opts = {});

// Canonical basis (reduced echelon form over the generator coordinates) of span(ps).
std::vector<Polynomial> canonical_basis(const std::vector<Polynomial>& ps, const std::vector<Polynomial>& gens);

}  // namespace polyinv
