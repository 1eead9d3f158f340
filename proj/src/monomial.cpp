#include "polyinv/monomial.hpp"

#include "polyinv/errors.hpp"

#include <limits>

namespace polyinv {

namespace {

constexpr unsigned kMaxExp = std::numeric_limits<Monomial::Exp>::max();

Monomial::Exp checked(unsigned v) {
    if (v > kMaxExp) throw ResourceLimit("monomial exponent overflow");
    return static_cast<Monomial::Exp>(v);
}

}  // namespace

Monomial::Monomial(std::initializer_list<unsigned> exps) {
    for (unsigned v : exps) {
        e_.push_back(checked(v));
        deg_ += v;
    }
}

Monomial::Monomial(const std::vector<unsigned>& exps) {
    for (unsigned v : exps) {
        e_.push_back(checked(v));
        deg_ += v;
    }
}

void Monomial::set(std::size_t i, unsigned v) {
    deg_ = deg_ - e_[i] + v;
    e_[i] = checked(v);
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = checked(unsigned(e_[i]) + o.e_[i]);
    r.deg_ = deg_ + o.deg_;
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = static_cast<Exp>(e_[i] - o.e_[i]);
    r.deg_ = deg_ - o.deg_;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    unsigned d = 0;
    for (std::size_t i = 0; i < a.e_.size(); ++i) {
        if (b.e_[i] > r.e_[i]) r.e_[i] = b.e_[i];
        d += r.e_[i];
    }
    r.deg_ = d;
    return r;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e_.size(); ++i)
        if (a.e_[i] && b.e_[i]) return false;
    return true;
}

Monomial Monomial::padded(std::size_t n) const {
    Monomial r(*this);
    r.e_.resize(n, 0);
    return r;
}

Monomial Monomial::truncated(std::size_t n) const {
    Monomial r(n);
    for (std::size_t i = 0; i < n; ++i) r.set(i, e_[i]);
    return r;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (Exp v : e_) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return h;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    return lex_compare(a, b);
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
}

int lex_compare(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

namespace {

void fill_degree(std::size_t n, std::size_t var, unsigned remaining, std::vector<unsigned>& cur,
                 std::vector<Monomial>& out) {
    if (var + 1 == n) {
        cur[var] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        cur[var] = e;
        fill_degree(n, var + 1, remaining - e, cur, out);
    }
    cur[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, unsigned d) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        out.emplace_back(0);
        return out;
    }
    std::vector<unsigned> cur(nvars, 0);
    for (unsigned k = 0; k <= d; ++k) fill_degree(nvars, 0, k, cur, out);
    return out;
}

}  // namespace polyinv
