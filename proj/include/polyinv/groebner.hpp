#pragma once

#include "polyinv/polynomial.hpp"

#include <cstddef>
#include <vector>

namespace polyinv {

enum class OrderKind { GrevLex, Lex };

struct MonomialOrder {
    OrderKind kind = OrderKind::GrevLex;

    int compare(const Monomial& a, const Monomial& b) const {
        return kind == OrderKind::GrevLex ? grevlex_compare(a, b) : lex_compare(a, b);
    }
    bool operator==(const MonomialOrder& o) const { return kind == o.kind; }
};

// Reduced, monic Groebner basis. Generators are sorted by leading monomial, smallest first.
class GroebnerBasis {
public:
    GroebnerBasis(Ctx ctx, MonomialOrder order) : ctx_(std::move(ctx)), order_(order) {}

    const Ctx& ctx() const { return ctx_; }
    const MonomialOrder& order() const { return order_; }
    // Generators as canonical polynomials.
    std::vector<Polynomial> generators() const;
    std::size_t size() const { return polys_.size(); }
    bool is_unit() const { return polys_.size() == 1 && polys_[0].size() == 1 && polys_[0][0].mono.is_one(); }
    bool is_zero_ideal() const { return polys_.empty(); }

    // Terms sorted by this basis' order, largest first; leading coefficient 1.
    const std::vector<std::vector<Term>>& raw() const { return polys_; }

private:
    friend class BuchbergerEngine;
    friend GroebnerBasis lift_basis(const GroebnerBasis& G, const Ctx& bigger);
    Ctx ctx_;
    MonomialOrder order_;
    std::vector<std::vector<Term>> polys_;
};

struct GroebnerStats {
    std::size_t pairs_processed = 0;
    std::size_t zero_reductions = 0;
    std::size_t pairs_skipped = 0;
};

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, MonomialOrder order = {}, GroebnerStats* stats = nullptr);
// Groebner basis of <G, extra>, reusing that G is already a Groebner basis.
GroebnerBasis extend_basis(const GroebnerBasis& G, const std::vector<Polynomial>& extra, GroebnerStats* stats = nullptr);
// Same basis re-expressed in a context that has G's context as prefix.
GroebnerBasis lift_basis(const GroebnerBasis& G, const Ctx& bigger);

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);
bool ideal_membership(const Polynomial& f, const std::vector<Polynomial>& S);

// S-polynomial of two monic basis elements, as a canonical polynomial.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder order = {});
Monomial leading_monomial(const Polynomial& f, MonomialOrder order = {});

// True iff every f lies in the radical of <S>.
bool in_radical(const std::vector<Polynomial>& fs, const std::vector<Polynomial>& S);

// Caches the Groebner basis of S across several radical queries.
class RadicalOracle {
public:
    explicit RadicalOracle(std::vector<Polynomial> S);
    bool contains(const Polynomial& f);

    struct Counters {
        std::size_t membership_hits = 0;
        std::size_t rabinowitsch_runs = 0;
    };
    const Counters& counters() const { return counters_; }

private:
    const GroebnerBasis& basis_for(const std::vector<bool>& strip);

    std::vector<Polynomial> S_;
    std::vector<bool> strippable_;
    std::vector<std::pair<std::vector<bool>, GroebnerBasis>> cache_;
    Counters counters_;
};

}  // namespace polyinv
