#pragma once

#include "polyinv/context.hpp"
#include "polyinv/monomial.hpp"
#include "polyinv/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace polyinv {

struct Term {
    Monomial mono;
    Rational coeff;
};

// Sparse polynomial with rational coefficients. Terms are kept sorted by
// graded-lex order, largest first, with no zero coefficients, so structural
// equality is polynomial equality.
class Polynomial {
public:
    explicit Polynomial(Ctx ctx) : ctx_(std::move(ctx)) {}

    static Polynomial constant(Ctx ctx, const Rational& c);
    static Polynomial variable(Ctx ctx, std::size_t i);
    static Polynomial monomial(Ctx ctx, Monomial m, const Rational& c = 1);
    // Sorts, merges duplicates and drops zeros.
    static Polynomial from_terms(Ctx ctx, std::vector<Term> terms);
    // Terms already sorted, unique and nonzero.
    static Polynomial from_sorted_terms(Ctx ctx, std::vector<Term> terms);

    const Ctx& ctx() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    // -1 for the zero polynomial.
    int degree() const;
    unsigned degree_in(std::size_t var) const;
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial mul_term(const Monomial& m, const Rational& c) const;
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Rational evaluate(std::span<const Rational> point) const;
    // Fixes variable `var` to `value`; the context is unchanged.
    Polynomial substitute(std::size_t var, const Rational& value) const;

    // Re-express in a context that has this context as a prefix.
    Polynomial lifted(const Ctx& bigger) const;
    // Re-express in a prefix context; the dropped variables must not occur.
    Polynomial restricted(const Ctx& smaller) const;
    // Apply a variable renaming into another context: variable i goes to target index map[i].
    Polynomial renamed(const Ctx& target, const std::vector<std::size_t>& map) const;

    // Divide by the largest monomial dividing every term.
    std::pair<Monomial, Polynomial> monomial_content() const;
    Polynomial monic() const;
    // Smallest integer multiple with coprime integer coefficients and positive leading coefficient.
    Polynomial primitive() const;

    std::string to_string() const;

private:
    Ctx ctx_;
    std::vector<Term> terms_;
};

Polynomial operator*(const Rational& c, const Polynomial& p);

using PolyMap = std::vector<Polynomial>;

// Substitute F for the first F.size() variables of each g; further variables of g
// (extension variables) pass through unchanged. F may live in a prefix context of g's.
Polynomial compose(const Polynomial& g, const PolyMap& F);
std::vector<Polynomial> compose(const std::vector<Polynomial>& gs, const PolyMap& F);

// Returns f with g = p*f, or nothing.
std::optional<Polynomial> divide_exact(const Polynomial& g, const Polynomial& p);

struct LinearForm {
    std::map<std::size_t, Rational> coeffs;  // index relative to the first y-variable
    Rational constant = 0;

    bool is_zero() const { return coeffs.empty() && constant == 0; }
    Rational apply(std::span<const Rational> y) const;
};

// Splits p (linear and homogeneous in variables [y_begin, y_end)) into
// one linear form per x-monomial. The x-monomials are returned in graded-lex order,
// largest first, expressed in p's context with zero y-exponents.
std::vector<std::pair<Monomial, LinearForm>> coefficients_wrt_x(const Polynomial& p, std::size_t y_begin,
                                                                 std::size_t y_end);

std::vector<Polynomial> monomial_polys(const Ctx& ctx, std::size_t nvars, unsigned d);

PolyMap identity_map(const Ctx& ctx, std::size_t n);

Polynomial product(const std::vector<Polynomial>& ps, const Ctx& ctx);

}  // namespace polyinv
