#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace polyinv {

class Monomial {
public:
    using Exp = std::uint16_t;
    using Storage = boost::container::small_vector<Exp, 12>;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    Monomial(std::initializer_list<unsigned> exps);
    explicit Monomial(const std::vector<unsigned>& exps);

    std::size_t size() const { return e_.size(); }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    unsigned degree() const { return deg_; }
    bool is_one() const { return deg_ == 0; }

    void set(std::size_t i, unsigned v);

    Monomial operator*(const Monomial& o) const;
    // Caller guarantees o divides *this.
    Monomial operator/(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);
    // Disjoint support.
    static bool coprime(const Monomial& a, const Monomial& b);

    Monomial padded(std::size_t n) const;
    Monomial truncated(std::size_t n) const;

    bool operator==(const Monomial& o) const { return deg_ == o.deg_ && e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    std::size_t hash() const;

private:
    Storage e_;
    unsigned deg_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Three-way comparisons; positive means a > b.
int grlex_compare(const Monomial& a, const Monomial& b);
int grevlex_compare(const Monomial& a, const Monomial& b);
int lex_compare(const Monomial& a, const Monomial& b);

// Degree ascending; within a degree, lexicographically larger exponent vectors first,
// so n=2, d=2 gives 1, x1, x2, x1^2, x1*x2, x2^2.
std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, unsigned d);

}  // namespace polyinv
