#include "properties.hpp"

#include "polyinv/factor.hpp"
#include "polyinv/general.hpp"
#include "polyinv/generate.hpp"
#include "polyinv/groebner.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace testkit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// 2^61 - 1, 2^62 - 57 and 2^31 - 1.
constexpr std::array<u64, 3> kPrimes{2305843009213693951ULL, 4611686018427387847ULL, 2147483647ULL};

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

u64 int_mod(const Integer& z, u64 p) {
    Integer r = z % Integer(static_cast<unsigned long>(p));
    if (r < 0) r += Integer(static_cast<unsigned long>(p));
    return r.get_ui();
}

// Callers only use primes that do not divide the small denominators of the test data.
u64 rat_mod(const Rational& q, u64 p) {
    return mulmod(int_mod(q.get_num(), p), powmod(int_mod(q.get_den(), p), p - 2, p), p);
}

u64 eval_mod(const Polynomial& f, const std::vector<u64>& x, u64 p) {
    u64 total = 0;
    for (const auto& t : f.terms()) {
        u64 v = rat_mod(t.coeff, p);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (t.mono[i]) v = mulmod(v, powmod(x[i], t.mono[i], p), p);
        total = (total + v) % p;
    }
    return total;
}

std::size_t rank_mod(std::vector<std::vector<u64>> rows, std::size_t cols, u64 p) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        u64 inv = powmod(rows[r][c], p - 2, p);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            u64 f = mulmod(rows[i][c], inv, p);
            for (std::size_t j = c; j < cols; ++j) rows[i][j] = (rows[i][j] + p - mulmod(f, rows[r][j], p)) % p;
        }
        ++r;
    }
    return r;
}

std::size_t bits(const std::vector<Rational>& x) {
    std::size_t b = 0;
    for (const auto& q : x)
        b = std::max(b, mpz_sizeinbase(q.get_num().get_mpz_t(), 2) + mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    return b;
}

constexpr std::size_t kExactBitBudget = 1 << 16;

std::string str(const std::vector<Rational>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + to_string(a[i]);
    return s + ")";
}

LoopProgram make_loop(const Ctx& ctx, std::vector<Rational> a, PolyMap F) {
    LoopProgram L;
    L.vars = ctx;
    L.init = std::move(a);
    L.branches.push_back(std::move(F));
    return L;
}

}  // namespace

std::string Tally::summary() const {
    std::ostringstream os;
    os << checks << " checks, " << failures.size() << " failures";
    for (std::size_t i = 0; i < failures.size() && i < 5; ++i) os << "\n  " << failures[i];
    return os.str();
}

std::size_t bareiss_rank(QMatrix A) {
    std::size_t r = 0;
    Rational prev = 1;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t piv = r;
        while (piv < A.rows() && A.at(piv, c) == 0) ++piv;
        if (piv == A.rows()) continue;
        for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A.at(r, j), A.at(piv, j));
        for (std::size_t i = r + 1; i < A.rows(); ++i) {
            for (std::size_t j = c + 1; j < A.cols(); ++j)
                A.at(i, j) = (A.at(r, c) * A.at(i, j) - A.at(i, c) * A.at(r, j)) / prev;
            A.at(i, c) = 0;
        }
        prev = A.at(r, c);
        ++r;
    }
    return r;
}

TrajectoryReport vanish_along_trajectories(const LoopProgram& L, const std::vector<Rational>& a,
                                           const std::vector<Polynomial>& ps, std::size_t trajectories,
                                           std::size_t depth, std::uint64_t seed) {
    TrajectoryReport rep;
    Rng rng(seed);
    auto hs = L.guards_of(GuardKind::NonZero);
    for (std::size_t t = 0; t < trajectories && rep.ok; ++t) {
        std::vector<std::size_t> schedule;
        for (std::size_t k = 0; k < depth; ++k) schedule.push_back(rng.index(L.branches.size()));
        std::vector<Rational> x = a;
        std::array<std::vector<u64>, 3> xm;
        bool modular = false;
        for (std::size_t k = 0; k <= depth; ++k) {
            ++rep.states;
            bool stop = false;
            if (!modular) {
                for (std::size_t i = 0; i < ps.size(); ++i)
                    if (ps[i].evaluate(x) != 0) {
                        rep.ok = false;
                        rep.failure = ps[i].to_string() + " is nonzero after " + std::to_string(k) + " steps from " + str(a);
                        return rep;
                    }
                for (const auto& h : hs) stop = stop || h.evaluate(x) == 0;
            } else {
                ++rep.modular_states;
                for (std::size_t i = 0; i < ps.size(); ++i) {
                    bool zero = true;
                    for (std::size_t j = 0; j < 3; ++j) zero = zero && eval_mod(ps[i], xm[j], kPrimes[j]) == 0;
                    if (!zero) {
                        rep.ok = false;
                        rep.failure = ps[i].to_string() + " is nonzero (modular) after " + std::to_string(k) +
                                      " steps from " + str(a);
                        return rep;
                    }
                }
                for (const auto& h : hs) {
                    bool zero = true;
                    for (std::size_t j = 0; j < 3; ++j) zero = zero && eval_mod(h, xm[j], kPrimes[j]) == 0;
                    stop = stop || zero;
                }
            }
            if (stop || k == depth) break;
            const PolyMap& F = L.branches[schedule[k]];
            if (!modular) {
                x = apply_map(F, x);
                if (bits(x) > kExactBitBudget) {
                    modular = true;
                    for (std::size_t j = 0; j < 3; ++j) {
                        xm[j].clear();
                        for (const auto& q : x) xm[j].push_back(rat_mod(q, kPrimes[j]));
                    }
                }
            } else {
                for (std::size_t j = 0; j < 3; ++j) {
                    std::vector<u64> next;
                    for (const auto& f : F) next.push_back(eval_mod(f, xm[j], kPrimes[j]));
                    xm[j] = std::move(next);
                }
            }
        }
    }
    return rep;
}

LoopProgram random_loop(Rng& rng, std::size_t family) {
    std::size_t n = 1 + rng.index(3);
    auto ctx = make_context(n);
    auto x = [&](std::size_t i) { return Polynomial::variable(ctx, i); };
    auto cst = [&](long c) { return Polynomial::constant(ctx, c); };
    std::vector<Rational> a = rng.int_point(n, 3);
    PolyMap F;
    switch (family % 6) {
    case 0:  // affine
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial f = cst(rng.uniform(-2, 2));
            for (std::size_t j = 0; j < n; ++j) f += x(j) * Rational(rng.uniform(-2, 2));
            F.push_back(f);
        }
        break;
    case 1: {  // a is a fixed point
        std::vector<Polynomial> shifted;
        for (std::size_t i = 0; i < n; ++i) shifted.push_back(x(i) - Polynomial::constant(ctx, a[i]));
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial f = Polynomial::constant(ctx, a[i]);
            for (int t = 0; t < 3; ++t) {
                Polynomial m = shifted[rng.index(n)];
                if (rng.uniform(0, 1)) m = m * shifted[rng.index(n)];
                f += m * Rational(rng.uniform(-2, 2));
            }
            F.push_back(f);
        }
        break;
    }
    case 2:  // triangular
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial f = x(i) + cst(rng.uniform(1, 2));
            if (i > 0) f += random_poly(rng, ctx, i, 2, 2, 2);
            F.push_back(f);
        }
        break;
    case 3:  // sparse quadratic
        for (std::size_t i = 0; i < n; ++i) F.push_back(random_poly(rng, ctx, n, 2, 2, 2));
        break;
    case 4: {  // signed permutation
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        for (std::size_t i = 0; i < n; ++i) F.push_back(x(perm[i]) * Rational(rng.uniform(0, 1) ? 1 : -1));
        break;
    }
    default:  // last coordinate frozen
        for (std::size_t i = 0; i + 1 < n; ++i)
            F.push_back(random_poly(rng, ctx, n, 2, 3, 2) + x(i) * Rational(rng.uniform(0, 1)));
        F.push_back(x(n - 1));
        break;
    }
    return make_loop(ctx, a, F);
}

std::size_t unrolling_kernel_dimension(const LoopProgram& L, const std::vector<Polynomial>& gs, std::size_t depth) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < 2; ++j) {
        u64 p = kPrimes[j];
        std::vector<u64> x;
        for (const auto& q : L.concrete_init()) x.push_back(rat_mod(q, p));
        std::vector<std::vector<u64>> rows;
        for (std::size_t k = 0; k <= depth; ++k) {
            std::vector<u64> row;
            for (const auto& g : gs) row.push_back(eval_mod(g, x, p));
            rows.push_back(row);
            std::vector<u64> next;
            for (const auto& f : L.branches[0]) next.push_back(eval_mod(f, x, p));
            x = std::move(next);
        }
        best = std::max(best, rank_mod(rows, gs.size(), p));
    }
    return gs.size() - best;
}

Tally soundness_suite() {
    Tally tally;
    constexpr std::size_t kTrajectories = 5, kDepth = 25;
    auto run = [&](const std::string& label, const LoopProgram& L, const std::vector<Rational>& a,
                   const std::vector<Polynomial>& ps, std::uint64_t seed) {
        auto rep = vanish_along_trajectories(L, a, ps, kTrajectories, kDepth, seed);
        tally.expect(rep.ok, label + ": " + rep.failure);
    };

    struct Case {
        const char* name;
        std::vector<unsigned> degrees;
    };
    const std::vector<Case> cases{{"example1", {1, 2, 3}}, {"fib1", {2, 3, 4}}, {"fib2", {2, 3}},
                                  {"fib3", {2, 3}},        {"squares", {2, 3}}, {"ps6", {6}},
                                  {"nagata", {2, 3}},      {"markov", {2, 3}},  {"identity", {2}}};
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        LoopProgram L = corpus_loop(c.name);
        auto hs = L.guards_of(GuardKind::NonZero);
        for (unsigned d : c.degrees) {
            auto gs = monomial_polys(L.vars, L.n(), d);
            auto R = truncated_ideal_branch(L.concrete_init(), gs, hs, L.branches);
            if (d == c.degrees.back())
                tally.expect(R.dimension() > 0, std::string(c.name) + ": no invariants at degree " + std::to_string(d));
            run(std::string(c.name) + " degree " + std::to_string(d), L, L.concrete_init(), R.basis, ++seed);
        }
        // Invariants valid for every start, checked from random starts.
        unsigned d = c.degrees.back();
        auto invs = general_invariants(monomial_polys(L.vars, L.n(), d), L.branches);
        Rng rng(seed);
        for (int k = 0; k < 3; ++k) {
            auto a = rng.int_point(L.n(), 5);
            std::vector<Polynomial> ps;
            for (const auto& inv : invs) ps.push_back(inv.instantiate(a));
            run(std::string(c.name) + " general degree " + std::to_string(d), L, a, ps, ++seed);
        }
    }

    Rng rng(7);
    for (std::size_t k = 0; k < 30; ++k) {
        LoopProgram L = random_loop(rng, k);
        auto gs = monomial_polys(L.vars, L.n(), 2);
        auto R = truncated_ideal(L.concrete_init(), gs, {}, L.branches[0]);
        run("random loop " + std::to_string(k) + "\n" + print_loop(L), L, L.concrete_init(), R.basis, ++seed);
    }
    return tally;
}

Tally completeness_suite() {
    Tally tally;
    Rng rng(8);
    for (std::size_t k = 0; k < 50; ++k) {
        LoopProgram L = random_loop(rng, k);
        auto gs = monomial_polys(L.vars, L.n(), 2);
        auto R = truncated_ideal(L.concrete_init(), gs, {}, L.branches[0]);
        std::size_t brute = unrolling_kernel_dimension(L, gs, 3 * (gs.size() + 1));
        tally.expect(R.dimension() == brute, "random loop " + std::to_string(k) + ": dimension " +
                                                 std::to_string(R.dimension()) + " vs unrolled " + std::to_string(brute) +
                                                 "\n" + print_loop(L));
        // Every basis element is an invariant of the unrolled prefix.
        auto rep = vanish_along_trajectories(L, L.concrete_init(), R.basis, 1, 3 * (gs.size() + 1), k);
        tally.expect(rep.ok, "random loop " + std::to_string(k) + ": " + rep.failure);
    }
    return tally;
}

namespace {

void reduced_groebner_checks(Tally& tally, const GroebnerBasis& G, const std::vector<Polynomial>& input,
                             const std::string& label) {
    auto gens = G.generators();
    for (const auto& f : input) tally.expect(normal_form(f, G).is_zero(), label + ": input generator not reduced to 0");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Monomial lm = leading_monomial(gens[i], G.order());
        tally.expect(gens[i].coefficient(lm) == 1, label + ": leading coefficient not 1");
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (i != j)
                tally.expect(!leading_monomial(gens[j], G.order()).divides(lm), label + ": basis not reduced");
            if (j > i)
                tally.expect(normal_form(s_polynomial(gens[i], gens[j], G.order()), G).is_zero(),
                             label + ": S-polynomial does not reduce to 0");
        }
    }
}

}  // namespace

Tally groebner_suite() {
    Tally tally;

    // S-polynomials of random ideals, both orders, and determinism.
    Rng rng(21);
    for (int k = 0; k < 25; ++k) {
        std::size_t n = 2 + rng.index(2);
        auto ctx = make_context(n);
        std::vector<Polynomial> S;
        std::size_t count = 2 + rng.index(2);
        for (std::size_t i = 0; i < count; ++i) S.push_back(random_poly(rng, ctx, n, 2 + rng.index(2), 3, 4));
        for (auto kind : {OrderKind::GrevLex, OrderKind::Lex}) {
            if (kind == OrderKind::Lex && n > 2) continue;
            auto G = buchberger(S, MonomialOrder{kind});
            std::string label = "random ideal " + std::to_string(k);
            reduced_groebner_checks(tally, G, S, label);
            tally.expect(buchberger(S, MonomialOrder{kind}).generators() == G.generators(), label + ": not deterministic");
        }
    }

    // Radical membership against the low-power oracle: f^r in <S> for some r <= 6.
    rng = Rng(24);
    auto ctx = make_context(2);
    std::size_t found = 0, refuted = 0;
    for (int k = 0; k < 300; ++k) {
        std::vector<Polynomial> S;
        std::size_t count = 1 + rng.index(2);
        for (std::size_t i = 0; i < count; ++i) S.push_back(random_poly(rng, ctx, 2, 2, 3, 3));
        Polynomial f = random_poly(rng, ctx, 2, 2, 3, 3);
        // Every third instance takes f among the factors of a generator, so members occur.
        if (k % 3 == 0 && !S[0].is_zero()) {
            auto fs = irreducible_factors(S[0]).factors;
            if (!fs.empty()) f = fs[rng.index(fs.size())];
        }
        auto G = buchberger(S);
        int r = 0;
        Polynomial p = f;
        for (int e = 1; e <= 6 && r == 0; ++e, p = p * f)
            if (normal_form(p, G).is_zero()) r = e;
        bool rad = in_radical({f}, S);
        RadicalOracle oracle(S);
        std::string label = "radical instance " + std::to_string(k) + " f = " + f.to_string();
        tally.expect(oracle.contains(f) == rad, label + ": cached oracle disagrees");
        if (r > 0) {
            tally.expect(rad, label + ": power in ideal but not in radical");
            ++found;
        } else if (!rad) {
            ++refuted;
        } else {
            // A member needing a power above 6: confirm with a longer search.
            Polynomial q = f;
            bool hit = false;
            for (int e = 1; e <= 40 && !hit; ++e, q = q * f) hit = normal_form(q, G).is_zero();
            tally.expect(hit, label + ": in radical but no power up to 40 lies in the ideal");
        }
    }
    tally.expect(found > 20 && refuted > 20, "low-power oracle: too few decisive instances");

    // <l1^e1, l2^e2> for independent affine-linear l's has radical <l1, l2>: membership is
    // vanishing on the line V(l1, l2), decided by exact evaluation along a parametrization.
    rng = Rng(25);
    auto c3 = make_context(3);
    for (int k = 0; k < 40; ++k) {
        std::vector<Polynomial> ls;
        std::vector<QVector> rows;
        while (ls.size() < 2) {
            QVector row;
            for (int j = 0; j < 3; ++j) row.emplace_back(rng.uniform(-3, 3));
            auto trial = rows;
            trial.push_back(row);
            if (bareiss_rank(QMatrix::from_rows(trial, 3)) < trial.size()) continue;
            rows = trial;
            Polynomial l = Polynomial::constant(c3, rng.uniform(-3, 3));
            for (int j = 0; j < 3; ++j) l += Polynomial::variable(c3, j) * row[j];
            ls.push_back(l);
        }
        std::vector<Polynomial> S;
        for (const auto& l : ls) S.push_back(l.pow(1 + rng.index(3)));
        // Point p0 and direction v of the line, by Cramer's rule on the 2x3 system.
        QVector v{rows[0][1] * rows[1][2] - rows[0][2] * rows[1][1], rows[0][2] * rows[1][0] - rows[0][0] * rows[1][2],
                  rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]};
        std::size_t drop = 0;
        while (v[drop] == 0) ++drop;
        std::size_t i0 = drop == 0 ? 1 : 0, i1 = drop == 2 ? 1 : 2;
        Rational det = rows[0][i0] * rows[1][i1] - rows[0][i1] * rows[1][i0];
        Rational b0 = -ls[0].constant_term(), b1 = -ls[1].constant_term();
        QVector p0(3);
        p0[i0] = (b0 * rows[1][i1] - b1 * rows[0][i1]) / det;
        p0[i1] = (rows[0][i0] * b1 - rows[1][i0] * b0) / det;
        Polynomial f = k % 2 == 0 ? random_poly(rng, c3, 3, 2, 3) * ls[rng.index(2)] + random_poly(rng, c3, 3, 1, 2) * ls[0]
                                  : random_poly(rng, c3, 3, 2, 4);
        bool on_line = true;
        for (int t = 0; t <= f.degree() + 1 && on_line; ++t) {
            QVector pt(3);
            for (int j = 0; j < 3; ++j) pt[j] = p0[j] + Rational(t) * v[j];
            on_line = f.evaluate(pt) == 0;
        }
        tally.expect(in_radical({f}, S) == on_line, "linear-power instance " + std::to_string(k));
    }
    return tally;
}

Tally cell_suite() {
    // A = U * diag(l_1..l_k) * V with integer U (rows x k), V (k x cols) of rank k and
    // homogeneous linear forms l_i in the parameters. rank A(a) is the number of nonzero
    // l_i(a), so the rank strata are unions of linear subspaces that can be sampled exactly.
    Tally tally;
    Rng rng(37);
    auto random_int_matrix = [&](std::size_t r, std::size_t c) {
        QMatrix M(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) M.at(i, j) = rng.uniform(-3, 3);
        return M;
    };
    int matrices = 0;
    while (matrices < 6) {
        std::size_t n = 2 + rng.index(2), k = 2 + rng.index(2), rows = k + rng.index(2), cols = k + 1 + rng.index(2);
        auto ctx = make_context(n, "a");
        QMatrix U = random_int_matrix(rows, k), V = random_int_matrix(k, cols);
        if (bareiss_rank(U) != k || bareiss_rank(V) != k) continue;
        std::vector<QVector> lrows;
        std::vector<Polynomial> ls;
        for (std::size_t i = 0; i < k; ++i) {
            QVector row;
            for (std::size_t j = 0; j < n; ++j) row.emplace_back(rng.uniform(-2, 2));
            if (std::all_of(row.begin(), row.end(), [](const Rational& q) { return q == 0; })) row[0] = 1;
            Polynomial l(ctx);
            for (std::size_t j = 0; j < n; ++j) l += Polynomial::variable(ctx, j) * row[j];
            lrows.push_back(row);
            ls.push_back(l);
        }
        PolyMatrix A(ctx, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                Polynomial e(ctx);
                for (std::size_t t = 0; t < k; ++t) e += ls[t] * (U.at(i, t) * V.at(t, j));
                A.at(i, j) = e;
            }
        auto cells = parametric_kernel_cells(A);
        std::string label = "matrix " + std::to_string(matrices++);
        tally.expect(!cells.empty(), label + ": no cells");

        std::vector<std::size_t> hits(cells.size(), 0);
        std::vector<std::set<std::vector<Rational>>> distinct(cells.size());
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            // Points where at least the forms in `mask` vanish.
            std::vector<QVector> sub;
            for (std::size_t t = 0; t < k; ++t)
                if (mask >> t & 1) sub.push_back(lrows[t]);
            auto basis = kernel_basis(sub.empty() ? QMatrix(0, n) : QMatrix::from_rows(sub, n));
            for (int s = 0; s < 150; ++s) {
                QVector a(n);
                for (const auto& b : basis) {
                    Rational c = rng.rational(6);
                    for (std::size_t j = 0; j < n; ++j) a[j] += c * b[j];
                }
                QMatrix Aa = A.evaluate(a);
                std::size_t r = bareiss_rank(Aa);
                std::size_t owners = 0;
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    if (!cells[c].contains(a)) continue;
                    ++owners;
                    ++hits[c];
                    distinct[c].insert(a);
                    std::string where = label + " cell " + std::to_string(c) + " at " + str(a);
                    tally.expect(cells[c].rank == r, where + ": rank");
                    for (const PolyMatrix* Z : {&cells[c].kernel, &cells[c].kernel_poly}) {
                        QMatrix Za = Z->evaluate(a);
                        tally.expect(Za.cols() == cols - r, where + ": kernel width");
                        std::vector<QVector> colvecs;
                        for (std::size_t j = 0; j < Za.cols(); ++j) {
                            QVector v(cols);
                            for (std::size_t i = 0; i < cols; ++i) v[i] = Za.at(i, j);
                            auto Av = Aa.apply(v);
                            tally.expect(std::all_of(Av.begin(), Av.end(), [](const Rational& q) { return q == 0; }),
                                         where + ": A Z != 0");
                            colvecs.push_back(v);
                        }
                        if (!colvecs.empty())
                            tally.expect(bareiss_rank(QMatrix::from_rows(colvecs, cols)) == colvecs.size(),
                                         where + ": kernel columns dependent");
                    }
                }
                tally.expect(owners == 1, label + " at " + str(a) + ": owned by " + std::to_string(owners) + " cells");
            }
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            // A cell consisting of one rational point (the origin) cannot yield 50 distinct samples.
            if (distinct[c].size() == 1) continue;
            tally.expect(hits[c] >= 50, label + " cell " + std::to_string(c) + ": only " + std::to_string(hits[c]) +
                                            " sampled points");
        }
    }
    return tally;
}

}  // namespace testkit
