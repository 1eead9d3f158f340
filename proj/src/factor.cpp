#include "polyinv/factor.hpp"

#include <gmp.h>

#include <algorithm>
#include <optional>
#include <random>
#include <set>

namespace polyinv {

namespace {

using u64 = std::uint64_t;
using ZPoly = std::vector<Integer>;  // coefficient of X^i at index i, no trailing zeros
using FPoly = std::vector<u64>;

constexpr std::size_t kMaxImageDegree = 600;
constexpr std::size_t kMaxRecombineItems = 16;  // modular factors in the univariate recombination
constexpr std::size_t kMaxCombinations = 200000;

template <class P>
void trim(P& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

template <class P>
int deg(const P& f) {
    return static_cast<int>(f.size()) - 1;
}

// ---- integer polynomials ----

Integer content(const ZPoly& f) {
    Integer g = 0;
    for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly primitive_part(ZPoly f) {
    trim(f);
    if (f.empty()) return f;
    Integer g = content(f);
    if (f.back() < 0) g = -g;
    for (auto& c : f) c /= g;
    return f;
}

ZPoly derivative(const ZPoly& f) {
    ZPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
    trim(d);
    return d;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}

std::optional<ZPoly> divide_z(ZPoly a, const ZPoly& b) {
    if (b.empty()) return std::nullopt;
    if (a.size() < b.size()) {
        trim(a);
        return a.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
    }
    const std::size_t db = b.size() - 1;
    ZPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        if (a[i] == 0) continue;
        if (!mpz_divisible_p(a[i].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        Integer t = a[i] / b.back();
        q[i - db] = t;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= t * b[j];
    }
    for (std::size_t i = 0; i < db; ++i)
        if (a[i] != 0) return std::nullopt;
    trim(q);
    return q;
}

ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
    const Integer& lc = b.back();
    while (deg(a) >= deg(b)) {
        Integer c = a.back();
        std::size_t shift = a.size() - b.size();
        for (auto& x : a) x *= lc;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        trim(a);
    }
    return a;
}

ZPoly gcd_z(ZPoly a, ZPoly b) {
    a = primitive_part(std::move(a));
    b = primitive_part(std::move(b));
    while (!b.empty()) {
        ZPoly r = primitive_part(pseudo_remainder(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// ---- polynomials modulo a word-size prime ----

struct Field {
    u64 p;

    u64 mulm(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
    u64 inv(u64 a) const {
        u64 r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = mulm(r, a);
            a = mulm(a, a);
            e >>= 1;
        }
        return r;
    }
    FPoly reduce(const ZPoly& f) const {
        FPoly g(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) g[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
        trim(g);
        return g;
    }
    FPoly sub(FPoly a, const FPoly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
        trim(a);
        return a;
    }
    FPoly add(FPoly a, const FPoly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
        trim(a);
        return a;
    }
    FPoly mul(const FPoly& a, const FPoly& b) const {
        if (a.empty() || b.empty()) return {};
        FPoly c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulm(a[i], b[j])) % p;
        trim(c);
        return c;
    }
    // a = q*b + r
    void divmod(FPoly a, const FPoly& b, FPoly* q, FPoly* r) const {
        const u64 li = inv(b.back());
        const std::size_t db = b.size() - 1;
        FPoly qq(a.size() >= b.size() ? a.size() - db : 0, 0);
        for (std::size_t i = a.size(); i-- > db;) {
            if (a[i] == 0) continue;
            u64 t = mulm(a[i], li);
            qq[i - db] = t;
            for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - mulm(t, b[j])) % p;
        }
        trim(a);
        trim(qq);
        if (q) *q = std::move(qq);
        if (r) *r = std::move(a);
    }
    FPoly rem(const FPoly& a, const FPoly& b) const {
        FPoly r;
        divmod(a, b, nullptr, &r);
        return r;
    }
    FPoly quo(const FPoly& a, const FPoly& b) const {
        FPoly q;
        divmod(a, b, &q, nullptr);
        return q;
    }
    FPoly monic(FPoly a) const {
        if (a.empty()) return a;
        u64 li = inv(a.back());
        for (auto& c : a) c = mulm(c, li);
        return a;
    }
    FPoly gcd(FPoly a, FPoly b) const {
        while (!b.empty()) {
            FPoly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    // s*a + t*b = 1 for coprime a, b.
    void bezout(const FPoly& a, const FPoly& b, FPoly& s, FPoly& t) const {
        FPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            FPoly q, r;
            divmod(r0, r1, &q, &r);
            FPoly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
            r0 = std::move(r1), r1 = std::move(r);
            s0 = std::move(s1), s1 = std::move(s2);
            t0 = std::move(t1), t1 = std::move(t2);
        }
        u64 li = inv(r0.back());
        for (auto& c : s0) c = mulm(c, li);
        for (auto& c : t0) c = mulm(c, li);
        s = std::move(s0);
        t = std::move(t0);
    }
    FPoly powmod(FPoly base, u64 e, const FPoly& m) const {
        FPoly r{1};
        base = rem(base, m);
        while (e) {
            if (e & 1) r = rem(mul(r, base), m);
            base = rem(mul(base, base), m);
            e >>= 1;
        }
        return r;
    }
    FPoly derivative(const FPoly& f) const {
        FPoly d;
        for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mulm(f[i], i % p));
        trim(d);
        return d;
    }
};

// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<FPoly, std::size_t>> distinct_degree(const Field& F, FPoly f) {
    std::vector<std::pair<FPoly, std::size_t>> out;
    const FPoly X{0, 1};
    FPoly h = F.rem(X, f);
    for (std::size_t d = 1; 2 * d <= static_cast<std::size_t>(deg(f)); ++d) {
        h = F.powmod(h, F.p, f);
        FPoly g = F.gcd(f, F.sub(h, X));
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = F.quo(f, g);
            h = F.rem(h, f);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, static_cast<std::size_t>(deg(f)));
    return out;
}

// Cantor-Zassenhaus splitting of a product of irreducibles of degree d.
void equal_degree(const Field& F, const FPoly& g, std::size_t d, std::mt19937_64& rng, std::vector<FPoly>& out) {
    if (static_cast<std::size_t>(deg(g)) == d) {
        out.push_back(g);
        return;
    }
    std::uniform_int_distribution<u64> coef(0, F.p - 1);
    for (;;) {
        FPoly a(g.size() - 1);
        for (auto& c : a) c = coef(rng);
        trim(a);
        if (deg(a) < 1) continue;
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        FPoly norm = a, frob = a;
        for (std::size_t i = 1; i < d; ++i) {
            frob = F.powmod(frob, F.p, g);
            norm = F.rem(F.mul(norm, frob), g);
        }
        FPoly t = F.sub(F.powmod(norm, (F.p - 1) / 2, g), FPoly{1});
        FPoly u = F.gcd(g, t);
        if (deg(u) > 0 && deg(u) < deg(g)) {
            equal_degree(F, u, d, rng, out);
            equal_degree(F, F.monic(F.quo(g, u)), d, rng, out);
            return;
        }
    }
}

// ---- Hensel lifting modulo M = p^k ----

ZPoly to_z(const FPoly& f) {
    ZPoly g;
    g.reserve(f.size());
    for (u64 c : f) g.emplace_back(static_cast<unsigned long>(c));
    return g;
}

ZPoly mod_m(ZPoly f, const Integer& M) {
    for (auto& c : f) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
    trim(f);
    return f;
}

// Lifts target = g*h (mod p) to (mod p^k); g, h monic, target monic modulo p^k.
std::pair<ZPoly, ZPoly> hensel_pair(const Field& F, const ZPoly& target, const FPoly& g, const FPoly& h, unsigned k) {
    FPoly s, t;
    F.bezout(g, h, s, t);
    ZPoly G = to_z(g), H = to_z(h);
    Integer pj = static_cast<unsigned long>(F.p);
    for (unsigned j = 1; j < k; ++j) {
        Integer next = pj * static_cast<unsigned long>(F.p);
        ZPoly e = target;
        ZPoly gh = mul(G, H);
        if (e.size() < gh.size()) e.resize(gh.size(), 0);
        for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
        e = mod_m(std::move(e), next);
        for (auto& c : e) c /= pj;
        FPoly ep = F.reduce(e);
        FPoly q, gp;
        F.divmod(F.mul(t, ep), g, &q, &gp);
        FPoly hp = F.add(F.mul(s, ep), F.mul(q, h));
        if (G.size() < gp.size()) G.resize(gp.size(), 0);
        for (std::size_t i = 0; i < gp.size(); ++i) G[i] += pj * static_cast<unsigned long>(gp[i]);
        if (H.size() < hp.size()) H.resize(hp.size(), 0);
        for (std::size_t i = 0; i < hp.size(); ++i) H[i] += pj * static_cast<unsigned long>(hp[i]);
        pj = std::move(next);
    }
    return {std::move(G), std::move(H)};
}

ZPoly symmetric(ZPoly f, const Integer& M) {
    Integer half = M / 2;
    for (auto& c : f) {
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
        if (c > half) c -= M;
    }
    trim(f);
    return f;
}

bool square_free_mod(const Field& F, const FPoly& f) { return deg(F.gcd(f, F.derivative(f))) == 0; }

// Irreducible factors of a primitive square-free f of degree >= 1 with f(0) != 0 allowed.
std::optional<std::vector<ZPoly>> factor_square_free(ZPoly f) {
    if (deg(f) <= 1) return std::vector<ZPoly>{f};
    const std::size_t n = static_cast<std::size_t>(deg(f));
    std::mt19937_64 rng(0x5eed);

    // Pick among a few good primes the one with the fewest modular factors.
    std::optional<Field> best;
    std::vector<FPoly> best_factors;
    Integer cand = Integer(1) << 30;
    for (int found = 0; found < 3;) {
        mpz_nextprime(cand.get_mpz_t(), cand.get_mpz_t());
        Field F{cand.get_ui()};
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), F.p)) continue;
        FPoly fp = F.monic(F.reduce(f));
        if (!square_free_mod(F, fp)) continue;
        ++found;
        std::vector<FPoly> fs;
        for (auto& [g, d] : distinct_degree(F, fp)) equal_degree(F, g, d, rng, fs);
        if (!best || fs.size() < best_factors.size()) {
            best = F;
            best_factors = std::move(fs);
        }
        if (best_factors.size() == 1) break;
    }
    if (best_factors.size() == 1) return std::vector<ZPoly>{f};
    if (best_factors.size() > kMaxRecombineItems) return std::nullopt;
    const Field& F = *best;

    // Coefficient bound for any factor, times the leading coefficient.
    Integer maxc = 0;
    for (const auto& c : f) maxc = std::max<Integer>(maxc, abs(c));
    Integer bound = (Integer(1) << n) * static_cast<unsigned long>(n + 1) * maxc * abs(f.back()) * 2;
    unsigned k = 1;
    Integer M = static_cast<unsigned long>(F.p);
    while (M <= bound) {
        M *= static_cast<unsigned long>(F.p);
        ++k;
    }

    // Monic target modulo M, then lift the factors one by one.
    Integer lc_inv;
    mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), M.get_mpz_t());
    ZPoly target = f;
    for (auto& c : target) c *= lc_inv;
    target = mod_m(std::move(target), M);
    std::vector<ZPoly> lifted;
    for (std::size_t i = 0; i + 1 < best_factors.size(); ++i) {
        FPoly rest{1};
        for (std::size_t j = i + 1; j < best_factors.size(); ++j) rest = F.mul(rest, best_factors[j]);
        auto [G, H] = hensel_pair(F, target, best_factors[i], rest, k);
        lifted.push_back(mod_m(std::move(G), M));
        target = mod_m(std::move(H), M);
    }
    lifted.push_back(target);

    // Recombination by subsets of increasing size.
    std::vector<ZPoly> out;
    std::vector<ZPoly> items = std::move(lifted);
    for (std::size_t s = 1; 2 * s <= items.size();) {
        bool hit = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            ZPoly g{f.back()};
            for (std::size_t i : idx) g = mod_m(mul(g, items[i]), M);
            g = primitive_part(symmetric(std::move(g), M));
            if (auto q = divide_z(f, g)) {
                out.push_back(g);
                f = std::move(*q);
                for (std::size_t i = s; i-- > 0;) items.erase(items.begin() + static_cast<std::ptrdiff_t>(idx[i]));
                hit = true;
                break;
            }
            // next combination
            std::size_t i = s;
            while (i-- > 0 && idx[i] == items.size() - s + i) {
            }
            if (i == static_cast<std::size_t>(-1)) break;
            ++idx[i];
            for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!hit) ++s;
    }
    if (deg(f) > 0) out.push_back(primitive_part(f));
    return out;
}

}  // namespace

Factorization irreducible_factors(const Polynomial& p) {
    Factorization out;
    if (p.is_constant()) return out;
    const Ctx& ctx = p.ctx();
    const std::size_t nv = ctx->size();
    auto [content_mono, q] = p.monomial_content();
    std::vector<Polynomial> found;
    for (std::size_t i = 0; i < nv; ++i)
        if (content_mono[i] > 0) found.push_back(Polynomial::variable(ctx, i));

    if (!q.is_constant()) {
        q = q.primitive();
        std::vector<std::size_t> occ;
        std::vector<unsigned> base;
        for (std::size_t i = 0; i < nv; ++i)
            if (unsigned d = q.degree_in(i); d > 0) {
                occ.push_back(i);
                base.push_back(d + 1);
            }
        std::vector<std::size_t> weight(occ.size(), 1);
        std::size_t image_deg = 0;
        bool too_big = false;
        for (std::size_t k = 0; k < occ.size(); ++k) {
            if (k > 0) weight[k] = weight[k - 1] * base[k - 1];
            image_deg += (base[k] - 1) * weight[k];
            if (image_deg > kMaxImageDegree) too_big = true;
        }
        std::optional<std::vector<ZPoly>> ufactors;
        std::vector<unsigned> mult;
        if (!too_big) {
            ZPoly image(image_deg + 1, 0);
            for (const auto& t : q.terms()) {
                std::size_t e = 0;
                for (std::size_t k = 0; k < occ.size(); ++k) e += t.mono[occ[k]] * weight[k];
                image[e] = t.coeff.get_num();
            }
            trim(image);
            ZPoly sqf = primitive_part(*divide_z(image, gcd_z(image, derivative(image))));
            ufactors = factor_square_free(sqf);
            if (ufactors) {
                // Multiplicities, since images of repeated or distinct factors may share factors.
                for (const auto& u : *ufactors) {
                    unsigned k = 0;
                    ZPoly rest = image;
                    while (auto r = divide_z(rest, u)) {
                        ++k;
                        rest = std::move(*r);
                    }
                    mult.push_back(k);
                }
            }
        }
        // Sub-multisets of the univariate factors, by degree of their product.
        std::vector<std::vector<unsigned>> combos;
        bool enumerable = ufactors.has_value();
        if (enumerable) {
            std::size_t count = 1;
            for (unsigned k : mult) {
                count *= k + 1;
                if (count > kMaxCombinations) enumerable = false;
            }
        }
        if (!enumerable) {
            out.complete = false;
            found.push_back(q);
        } else {
            const auto& us = *ufactors;
            std::vector<unsigned> e(us.size(), 0);
            for (;;) {
                std::size_t i = 0;
                while (i < e.size() && e[i] == mult[i]) e[i++] = 0;
                if (i == e.size()) break;
                ++e[i];
                combos.push_back(e);
            }
            auto degree_of = [&](const std::vector<unsigned>& c) {
                std::size_t d = 0;
                for (std::size_t j = 0; j < c.size(); ++j) d += c[j] * static_cast<std::size_t>(deg(us[j]));
                return d;
            };
            std::stable_sort(combos.begin(), combos.end(),
                             [&](const auto& x, const auto& y) { return degree_of(x) < degree_of(y); });

            auto back = [&](const ZPoly& u) -> std::optional<Polynomial> {
                std::vector<Term> terms;
                for (std::size_t ex = 0; ex < u.size(); ++ex) {
                    if (u[ex] == 0) continue;
                    Monomial m(nv);
                    std::size_t rest = ex;
                    for (std::size_t k = 0; k < occ.size(); ++k) {
                        m.set(occ[k], static_cast<unsigned>(rest % base[k]));
                        rest /= base[k];
                    }
                    if (rest != 0) return std::nullopt;
                    terms.push_back({std::move(m), Rational(u[ex])});
                }
                return Polynomial::from_terms(ctx, std::move(terms));
            };
            // Cheap necessary condition before exact division: divisibility of values.
            std::vector<Rational> probe(nv);
            for (std::size_t k = 0; k < nv; ++k) probe[k] = static_cast<long>(2 * k + 3);
            Polynomial remaining = q;
            for (std::size_t ci = 0; ci < combos.size() && !remaining.is_constant();) {
                const auto& c = combos[ci];
                bool fits = true;
                for (std::size_t j = 0; j < c.size(); ++j) fits = fits && c[j] <= mult[j];
                bool hit = false;
                if (fits) {
                    ZPoly u{1};
                    for (std::size_t j = 0; j < c.size(); ++j)
                        for (unsigned r = 0; r < c[j]; ++r) u = mul(u, us[j]);
                    if (auto cand = back(u); cand && !cand->is_constant()) {
                        // Products of primitive factors are primitive, so both values are integers.
                        Rational cv = cand->evaluate(probe), rv = remaining.evaluate(probe);
                        bool plausible = cv == 0 || mpz_divisible_p(rv.get_num_mpz_t(), cv.get_num_mpz_t());
                        if (plausible) {
                            if (auto r = divide_exact(remaining, *cand)) {
                                found.push_back(cand->primitive());
                                remaining = std::move(*r);
                                for (std::size_t j = 0; j < c.size(); ++j) mult[j] -= c[j];
                                hit = true;
                            }
                        }
                    }
                }
                if (!hit) ++ci;
            }
            if (!remaining.is_constant()) found.push_back(remaining.primitive());
        }
    }

    std::set<std::string> seen;
    for (auto& f : found) {
        auto key = f.to_string();
        if (seen.insert(key).second) out.factors.push_back(std::move(f));
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const Polynomial& a, const Polynomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.to_string() < b.to_string();
    });
    return out;
}

}  // namespace polyinv
