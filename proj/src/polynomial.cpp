#include "polyinv/polynomial.hpp"

#include "polyinv/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace polyinv {

namespace {

bool grlex_greater(const Term& a, const Term& b) { return grlex_compare(a.mono, b.mono) > 0; }

void require_same(const Polynomial& a, const Polynomial& b) {
    if (!same_context(a.ctx(), b.ctx())) throw ContextMismatch();
}

using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;

Polynomial from_accumulator(const Ctx& ctx, Accumulator& acc) {
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) terms.push_back({m, std::move(c)});
    std::sort(terms.begin(), terms.end(), grlex_greater);
    return Polynomial::from_sorted_terms(ctx, std::move(terms));
}

}  // namespace

Polynomial Polynomial::constant(Ctx ctx, const Rational& c) {
    Polynomial p(ctx);
    if (c != 0) p.terms_.push_back({Monomial(ctx->size()), c});
    return p;
}

Polynomial Polynomial::variable(Ctx ctx, std::size_t i) {
    if (i >= ctx->size()) throw Error("variable index out of range");
    Monomial m(ctx->size());
    m.set(i, 1);
    return monomial(std::move(ctx), std::move(m));
}

Polynomial Polynomial::monomial(Ctx ctx, Monomial m, const Rational& c) {
    if (m.size() != ctx->size()) throw Error("monomial length does not match context");
    Polynomial p(std::move(ctx));
    if (c != 0) p.terms_.push_back({std::move(m), c});
    return p;
}

Polynomial Polynomial::from_terms(Ctx ctx, std::vector<Term> terms) {
    for (const auto& t : terms)
        if (t.mono.size() != ctx->size()) throw Error("monomial length does not match context");
    std::sort(terms.begin(), terms.end(), grlex_greater);
    Polynomial p(std::move(ctx));
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
            p.terms_.back().coeff += t.coeff;
        else {
            if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
}

Polynomial Polynomial::from_sorted_terms(Ctx ctx, std::vector<Term> terms) {
    Polynomial p(std::move(ctx));
    p.terms_ = std::move(terms);
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
    return d;
}

unsigned Polynomial::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return grlex_compare(t.mono, key) > 0; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return 0;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same(*this, o);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = grlex_compare(terms_[i].mono, o.terms_[j].mono);
        if (c > 0)
            out.push_back(terms_[i++]);
        else if (c < 0)
            out.push_back(o.terms_[j++]);
        else {
            Rational s = terms_[i].coeff + o.terms_[j].coeff;
            if (s != 0) out.push_back({terms_[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
    return from_sorted_terms(ctx_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
    Polynomial r(ctx_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same(*this, o);
    if (is_zero() || o.is_zero()) return Polynomial(ctx_);
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].mono, o.terms_[0].coeff);
    if (terms_.size() == 1) return o.mul_term(terms_[0].mono, terms_[0].coeff);
    Accumulator acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) acc[a.mono * b.mono] += a.coeff * b.coeff;
    return from_accumulator(ctx_, acc);
}

Polynomial Polynomial::operator*(const Rational& c) const {
    if (c == 0) return Polynomial(ctx_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = constant(ctx_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!same_context(ctx_, o.ctx_) || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != ctx_->size())
        throw ArityError("evaluation point has " + std::to_string(point.size()) + " entries, context has " +
                         std::to_string(ctx_->size()));
    std::vector<std::vector<Rational>> powers(point.size());
    auto power = [&](std::size_t i, unsigned e) -> const Rational& {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(1);
        while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
        return pw[e];
    };
    Rational sum = 0;
    for (const auto& t : terms_) {
        Rational v = t.coeff;
        for (std::size_t i = 0; i < point.size(); ++i)
            if (t.mono[i]) v *= power(i, t.mono[i]);
        sum += v;
    }
    return sum;
}

Polynomial Polynomial::substitute(std::size_t var, const Rational& value) const {
    Accumulator acc;
    std::vector<Rational> pw{1};
    for (const auto& t : terms_) {
        unsigned e = t.mono[var];
        while (pw.size() <= e) pw.push_back(pw.back() * value);
        Monomial m = t.mono;
        m.set(var, 0);
        acc[m] += t.coeff * pw[e];
    }
    return from_accumulator(ctx_, acc);
}

Polynomial Polynomial::lifted(const Ctx& bigger) const {
    if (same_context(ctx_, bigger)) return *this;
    if (!ctx_->is_prefix_of(*bigger)) throw ContextMismatch();
    // Padding with zeros keeps grlex order among the existing terms.
    Polynomial r(bigger);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono.padded(bigger->size()), t.coeff});
    return r;
}

Polynomial Polynomial::restricted(const Ctx& smaller) const {
    if (same_context(ctx_, smaller)) return *this;
    if (!smaller->is_prefix_of(*ctx_)) throw ContextMismatch();
    Polynomial r(smaller);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        for (std::size_t i = smaller->size(); i < ctx_->size(); ++i)
            if (t.mono[i]) throw Error("cannot drop variable '" + ctx_->name(i) + "' which occurs in the polynomial");
        r.terms_.push_back({t.mono.truncated(smaller->size()), t.coeff});
    }
    return r;
}

Polynomial Polynomial::renamed(const Ctx& target, const std::vector<std::size_t>& map) const {
    if (map.size() != ctx_->size()) throw ArityError("renaming map has wrong length");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m(target->size());
        for (std::size_t i = 0; i < map.size(); ++i)
            if (t.mono[i]) m.set(map[i], m[map[i]] + t.mono[i]);
        out.push_back({std::move(m), t.coeff});
    }
    return from_terms(target, std::move(out));
}

std::pair<Monomial, Polynomial> Polynomial::monomial_content() const {
    Monomial g(ctx_->size());
    if (terms_.empty()) return {g, *this};
    g = terms_[0].mono;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < g.size(); ++i)
            if (t.mono[i] < g[i]) g.set(i, t.mono[i]);
    if (g.is_one()) return {g, *this};
    Polynomial r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono / g, t.coeff});
    return {g, r};
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    Rational inv = 1 / terms_[0].coeff;
    return *this * inv;
}

Polynomial Polynomial::primitive() const {
    if (is_zero()) return *this;
    Integer l = 1, g = 0;
    for (const auto& t : terms_) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den().get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num().get_mpz_t());
    }
    Rational scale(l, g);
    scale.canonicalize();
    if (terms_[0].coeff < 0) scale = -scale;
    return *this * scale;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (!t.mono[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += ctx_->name(i);
            if (t.mono[i] > 1) mono += "^" + std::to_string(t.mono[i]);
        }
        if (mono.empty())
            out += polyinv::to_string(c);
        else if (c == 1)
            out += mono;
        else
            out += polyinv::to_string(c) + "*" + mono;
    }
    return out;
}

namespace {

// Memoized images of x-monomials under a substitution: image(m) = image(m / x_i) * F_i.
class SubstitutionCache {
public:
    SubstitutionCache(const Ctx& ctx, const PolyMap& F) : ctx_(ctx), F_(F) {}

    const Polynomial& image(const Monomial& xm) {
        auto it = memo_.find(xm);
        if (it != memo_.end()) return it->second;
        Polynomial val(ctx_);
        if (xm.is_one())
            val = Polynomial::constant(ctx_, 1);
        else {
            std::size_t i = xm.size();
            while (xm[--i] == 0) {
            }
            Monomial lower = xm;
            lower.set(i, xm[i] - 1);
            val = image(lower) * F_[i];
        }
        return memo_.emplace(xm, std::move(val)).first->second;
    }

private:
    Ctx ctx_;
    const PolyMap& F_;
    std::unordered_map<Monomial, Polynomial, MonomialHash> memo_;
};

PolyMap lift_map(const PolyMap& F, const Ctx& ctx) {
    PolyMap out;
    out.reserve(F.size());
    for (const auto& f : F) out.push_back(f.lifted(ctx));
    return out;
}

Polynomial compose_with(const Polynomial& g, std::size_t n, SubstitutionCache& cache) {
    const Ctx& ctx = g.ctx();
    Accumulator acc;
    for (const auto& t : g.terms()) {
        Monomial xm(n), ext(ctx->size());
        for (std::size_t i = 0; i < ctx->size(); ++i) {
            if (i < n)
                xm.set(i, t.mono[i]);
            else
                ext.set(i, t.mono[i]);
        }
        const Polynomial& img = cache.image(xm);
        for (const auto& s : img.terms()) {
            Rational c = s.coeff * t.coeff;
            if (ext.is_one())
                acc[s.mono] += c;
            else
                acc[s.mono * ext] += c;
        }
    }
    return from_accumulator(ctx, acc);
}

}  // namespace

std::vector<Polynomial> compose(const std::vector<Polynomial>& gs, const PolyMap& F) {
    std::vector<Polynomial> out;
    if (gs.empty()) return out;
    const Ctx& ctx = gs[0].ctx();
    for (const auto& g : gs)
        if (!same_context(g.ctx(), ctx)) throw ContextMismatch();
    if (F.size() > ctx->size())
        throw ArityError("map has " + std::to_string(F.size()) + " entries but polynomial has only " +
                         std::to_string(ctx->size()) + " variables");
    PolyMap lifted = lift_map(F, ctx);
    std::size_t n = F.size();
    SubstitutionCache cache(ctx, lifted);
    out.reserve(gs.size());
    for (const auto& g : gs) out.push_back(compose_with(g, n, cache));
    return out;
}

Polynomial compose(const Polynomial& g, const PolyMap& F) { return compose(std::vector<Polynomial>{g}, F)[0]; }

std::optional<Polynomial> divide_exact(const Polynomial& g, const Polynomial& p) {
    require_same(g, p);
    if (p.is_zero()) throw Error("division by the zero polynomial");
    const Term& lead = p.terms()[0];
    Rational inv = 1 / lead.coeff;
    std::vector<Term> quotient;
    Polynomial r = g;
    while (!r.is_zero()) {
        const Term& rt = r.terms()[0];
        if (!lead.mono.divides(rt.mono)) return std::nullopt;
        Monomial m = rt.mono / lead.mono;
        Rational c = rt.coeff * inv;
        r = r - p.mul_term(m, c);
        quotient.push_back({std::move(m), std::move(c)});
    }
    // Quotient terms arrive in decreasing order.
    return Polynomial::from_sorted_terms(g.ctx(), std::move(quotient));
}

Rational LinearForm::apply(std::span<const Rational> y) const {
    Rational s = constant;
    for (const auto& [i, c] : coeffs) s += c * y[i];
    return s;
}

std::vector<std::pair<Monomial, LinearForm>> coefficients_wrt_x(const Polynomial& p, std::size_t y_begin,
                                                                 std::size_t y_end) {
    if (y_begin > y_end || y_end > p.ctx()->size()) throw Error("y-variable range out of bounds");
    auto cmp = [](const Monomial& a, const Monomial& b) { return grlex_compare(a, b) > 0; };
    std::map<Monomial, LinearForm, decltype(cmp)> forms(cmp);
    for (const auto& t : p.terms()) {
        std::size_t yi = y_end;
        unsigned ydeg = 0;
        for (std::size_t i = y_begin; i < y_end; ++i)
            if (t.mono[i]) {
                ydeg += t.mono[i];
                yi = i;
            }
        if (ydeg != 1)
            throw NotLinearError(ydeg == 0 ? "term without y-variable in a form that must be linear in y"
                                           : "polynomial is not linear in the y-variables");
        Monomial xm = t.mono;
        xm.set(yi, 0);
        forms[xm].coeffs[yi - y_begin] += t.coeff;
    }
    std::vector<std::pair<Monomial, LinearForm>> out;
    for (auto& [m, f] : forms) {
        for (auto it = f.coeffs.begin(); it != f.coeffs.end();)
            it = it->second == 0 ? f.coeffs.erase(it) : std::next(it);
        if (!f.is_zero()) out.emplace_back(m, std::move(f));
    }
    return out;
}

std::vector<Polynomial> monomial_polys(const Ctx& ctx, std::size_t nvars, unsigned d) {
    std::vector<Polynomial> out;
    for (const auto& m : monomials_up_to_degree(nvars, d)) out.push_back(Polynomial::monomial(ctx, m.padded(ctx->size())));
    return out;
}

PolyMap identity_map(const Ctx& ctx, std::size_t n) {
    PolyMap F;
    for (std::size_t i = 0; i < n; ++i) F.push_back(Polynomial::variable(ctx, i));
    return F;
}

Polynomial product(const std::vector<Polynomial>& ps, const Ctx& ctx) {
    Polynomial r = Polynomial::constant(ctx, 1);
    for (const auto& p : ps) r = r * p.lifted(ctx);
    return r;
}

}  // namespace polyinv
