#include "polyinv/linalg.hpp"

#include "polyinv/errors.hpp"
#include "polyinv/factor.hpp"
#include "polyinv/groebner.hpp"

#include <algorithm>
#include <map>

namespace polyinv {

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
    QMatrix A(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ArityError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) A.at(i, j) = rows[i][j];
    }
    return A;
}

QVector QMatrix::row(std::size_t i) const { return QVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

QVector QMatrix::apply(const QVector& v) const {
    if (v.size() != cols_) throw ArityError("vector length does not match matrix columns");
    QVector out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0) out[i] += at(i, j) * v[j];
    return out;
}

Echelon rref(const QMatrix& A) {
    std::vector<QVector> m;
    for (std::size_t i = 0; i < A.rows(); ++i) m.push_back(A.row(i));
    Echelon E;
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < A.cols(); ++j)
            if (m[r][j] != 0) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < A.cols(); ++j)
                if (m[r][j] != 0) m[i][j] -= f * m[r][j];
        }
        E.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    E.rows = std::move(m);
    return E;
}

std::size_t rank(const QMatrix& A) { return rref(A).pivots.size(); }

std::vector<QVector> kernel_basis(const Echelon& E, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : E.pivots) is_pivot[c] = true;
    std::vector<QVector> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVector v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < E.rows.size(); ++r) v[E.pivots[r]] = -E.rows[r][f];
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<QVector> kernel_basis(const QMatrix& A) { return kernel_basis(rref(A), A.cols()); }

std::vector<QVector> canonical_span(const std::vector<QVector>& vs, std::size_t dim) {
    return rref(QMatrix::from_rows(vs, dim)).rows;
}

std::vector<QVector> kernel_of_linear_forms(const std::vector<LinearForm>& forms, std::size_t m) {
    QMatrix A(forms.size(), m);
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (forms[i].constant != 0) throw Error("kernel_of_linear_forms: non-homogeneous linear form");
        for (const auto& [j, c] : forms[i].coeffs) {
            if (j >= m) throw ArityError("linear form refers to an unknown beyond the declared count");
            A.at(i, j) = c;
        }
    }
    return kernel_basis(A);
}

QMatrix coefficient_matrix(const std::vector<Polynomial>& ps) {
    auto cmp = [](const Monomial& a, const Monomial& b) { return grlex_compare(a, b) > 0; };
    std::map<Monomial, std::size_t, decltype(cmp)> index(cmp);
    for (const auto& p : ps)
        for (const auto& t : p.terms()) index.emplace(t.mono, 0);
    std::size_t k = 0;
    for (auto& [m, i] : index) i = k++;
    QMatrix A(ps.size(), index.size());
    for (std::size_t r = 0; r < ps.size(); ++r)
        for (const auto& t : ps[r].terms()) A.at(r, index.at(t.mono)) = t.coeff;
    return A;
}

std::optional<std::vector<QVector>> coordinates(const std::vector<Polynomial>& ps, const std::vector<Polynomial>& gens) {
    // Solve gens^T c = p through one elimination on the stacked monomial coefficients.
    std::vector<Polynomial> all(gens);
    all.insert(all.end(), ps.begin(), ps.end());
    QMatrix C = coefficient_matrix(all);
    std::size_t m = gens.size(), k = ps.size(), M = C.cols();
    // Columns: gens, then ps; rows: monomials.
    QMatrix T(M, m + k);
    for (std::size_t i = 0; i < m + k; ++i)
        for (std::size_t r = 0; r < M; ++r) T.at(r, i) = C.at(i, r);
    Echelon E = rref(T);
    for (std::size_t r = 0; r < E.pivots.size(); ++r)
        if (E.pivots[r] >= m) return std::nullopt;
    if (E.pivots.size() != m) throw Error("generators are linearly dependent");
    std::vector<QVector> out;
    for (std::size_t j = 0; j < k; ++j) {
        QVector c(m, 0);
        for (std::size_t r = 0; r < E.pivots.size(); ++r) c[E.pivots[r]] = E.rows[r][m + j];
        out.push_back(std::move(c));
    }
    return out;
}

Polynomial combine(const QVector& coeffs, const std::vector<Polynomial>& gens, const Ctx& ctx) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        Polynomial g = gens[i].lifted(ctx);
        for (const auto& t : g.terms()) terms.push_back({t.mono, t.coeff * coeffs[i]});
    }
    return Polynomial::from_terms(ctx, std::move(terms));
}

// ---------------------------------------------------------------- modular

namespace modp {

u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 pow(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 inv(u64 a, u64 p) { return pow(a, p - 2, p); }

namespace {

u64 mpz_mod_u64(const Integer& z, u64 p) {
    Integer r;
    Integer pp;
    mpz_import(pp.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
    mpz_mod(r.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t());
    u64 out = 0;
    mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
    return out;
}

Integer to_mpz(u64 v) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &v);
    return z;
}

}  // namespace

std::optional<u64> reduce(const Rational& q, u64 p) {
    u64 d = mpz_mod_u64(q.get_den(), p);
    if (d == 0) return std::nullopt;
    return mul(mpz_mod_u64(q.get_num(), p), inv(d, p), p);
}

u64 nth_prime(std::size_t i) {
    static std::vector<u64> cache;
    Integer cand = to_mpz((u64(1) << 62) - 1);
    if (!cache.empty()) cand = to_mpz(cache.back()) - 2;
    while (cache.size() <= i) {
        while (mpz_probab_prime_p(cand.get_mpz_t(), 30) == 0) cand -= 2;
        u64 v = 0;
        mpz_export(&v, nullptr, 1, sizeof(u64), 0, 0, cand.get_mpz_t());
        cache.push_back(v);
        cand -= 2;
    }
    return cache[i];
}

bool Echelon::insert(std::vector<u64> row) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        u64 c = row[piv_[r]];
        if (!c) continue;
        const auto& pr = rows_[r];
        for (std::size_t j = piv_[r]; j < cols_; ++j)
            if (pr[j]) row[j] = (row[j] + p_ - mul(c, pr[j], p_)) % p_;
    }
    std::size_t lead = 0;
    while (lead < cols_ && row[lead] == 0) ++lead;
    if (lead == cols_) return false;
    u64 iv = inv(row[lead], p_);
    for (std::size_t j = lead; j < cols_; ++j) row[j] = mul(row[j], iv, p_);
    // Keep the stored rows fully reduced against each other.
    for (auto& pr : rows_) {
        u64 c = pr[lead];
        if (!c) continue;
        for (std::size_t j = lead; j < cols_; ++j)
            if (row[j]) pr[j] = (pr[j] + p_ - mul(c, row[j], p_)) % p_;
    }
    auto pos = std::lower_bound(piv_.begin(), piv_.end(), lead);
    std::size_t at = static_cast<std::size_t>(pos - piv_.begin());
    piv_.insert(pos, lead);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(row));
    return true;
}

std::vector<std::size_t> Echelon::pivots() const { return piv_; }

std::vector<std::vector<u64>> Echelon::kernel() const {
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : piv_) is_pivot[c] = true;
    std::vector<std::vector<u64>> out;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<u64> v(cols_, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < rows_.size(); ++r) v[piv_[r]] = rows_[r][f] ? p_ - rows_[r][f] : 0;
        out.push_back(std::move(v));
    }
    return out;
}

bool rational_reconstruct(const Integer& u, const Integer& m, Rational& out) {
    // Find a/b = u mod m with |a|, b <= sqrt(m/2).
    Integer bound;
    Integer half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    Integer r0 = m, r1 = ((u % m) + m) % m, t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1) return false;
    out = Rational(r1, t1);
    out.canonicalize();
    return true;
}

}  // namespace modp

std::optional<ModularKernel> modular_kernel(
    const std::function<std::optional<std::vector<std::vector<modp::u64>>>(modp::u64)>& rows_mod, std::size_t cols,
    std::size_t max_primes) {
    using modp::u64;
    std::optional<std::vector<std::size_t>> pivots;
    std::vector<std::vector<Integer>> residues;  // CRT images of kernel entries
    Integer modulus = 1;
    std::optional<std::vector<QVector>> last;
    std::size_t used = 0;
    for (std::size_t k = 0; k < max_primes; ++k) {
        u64 p = modp::nth_prime(k);
        auto rows = rows_mod(p);
        if (!rows) continue;
        modp::Echelon E(cols, p);
        for (auto& r : *rows) E.insert(std::move(r));
        auto piv = E.pivots();
        if (pivots && piv.size() < pivots->size()) continue;  // unlucky prime
        if (!pivots || piv.size() > pivots->size() || piv != *pivots) {
            if (pivots && piv.size() == pivots->size()) {
                // Same rank, different pivots: keep the lexicographically smaller pivot set, which is the
                // generic one over Q.
                if (!(piv < *pivots)) continue;
            }
            pivots = piv;
            residues.clear();
            modulus = 1;
            last.reset();
            used = 0;
        }
        auto kern = E.kernel();
        Integer P;
        mpz_import(P.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
        if (residues.empty()) {
            residues.assign(kern.size(), std::vector<Integer>(cols));
            for (std::size_t i = 0; i < kern.size(); ++i)
                for (std::size_t j = 0; j < cols; ++j) mpz_import(residues[i][j].get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &kern[i][j]);
            modulus = P;
        } else {
            // x = r + M * ((v - r) * M^{-1} mod p)
            Integer Minv;
            mpz_invert(Minv.get_mpz_t(), modulus.get_mpz_t(), P.get_mpz_t());
            for (std::size_t i = 0; i < kern.size(); ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    Integer v;
                    mpz_import(v.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &kern[i][j]);
                    Integer d = ((v - residues[i][j]) % P + P) % P;
                    d = (d * Minv) % P;
                    residues[i][j] += modulus * d;
                }
            modulus *= P;
        }
        ++used;
        std::vector<QVector> rec(residues.size(), QVector(cols));
        bool ok = true;
        for (std::size_t i = 0; i < residues.size() && ok; ++i)
            for (std::size_t j = 0; j < cols && ok; ++j) ok = modp::rational_reconstruct(residues[i][j], modulus, rec[i][j]);
        if (!ok) {
            last.reset();
            continue;
        }
        if (last && *last == rec) return ModularKernel{std::move(rec), residues.size(), used};
        last = std::move(rec);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- polynomial matrices

PolyMatrix::PolyMatrix(Ctx ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), num_(rows * cols, Polynomial(ctx_)) {}

const Polynomial& PolyMatrix::den(std::size_t i, std::size_t j) const {
    static thread_local std::optional<Polynomial> one;
    if (den_.empty()) {
        if (!one || !same_context(one->ctx(), ctx_)) one = Polynomial::constant(ctx_, 1);
        return *one;
    }
    return den_[i * cols_ + j];
}

void PolyMatrix::set_den(std::size_t i, std::size_t j, Polynomial d) {
    if (d.is_zero()) throw Error("zero denominator");
    if (den_.empty()) den_.assign(rows_ * cols_, Polynomial::constant(ctx_, 1));
    den_[i * cols_ + j] = std::move(d);
}

QMatrix PolyMatrix::evaluate(std::span<const Rational> point) const {
    QMatrix M(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            Rational v = at(i, j).evaluate(point);
            if (!den_.empty()) {
                Rational d = den_[i * cols_ + j].evaluate(point);
                if (d == 0) throw Error("denominator vanishes at the evaluation point");
                v /= d;
            }
            M.at(i, j) = v;
        }
    return M;
}

std::string PolyMatrix::entry_string(std::size_t i, std::size_t j) const {
    std::string n = at(i, j).to_string();
    if (den_.empty() || at(i, j).is_zero()) return n;
    const Polynomial& d = den_[i * cols_ + j];
    if (d.is_constant() && d.constant_term() == 1) return n;
    return "(" + n + ")/(" + d.to_string() + ")";
}

PolyMatrix matrix_from_linear_polys(const std::vector<Polynomial>& ps, std::size_t y_begin, std::size_t m,
                                    const Ctx& x_ctx) {
    PolyMatrix A(x_ctx, ps.size(), m);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::vector<std::vector<Term>> cols(m);
        for (const auto& [xm, form] : coefficients_wrt_x(ps[i], y_begin, y_begin + m)) {
            for (std::size_t k = 0; k < xm.size(); ++k)
                if (xm[k] && k >= x_ctx->size())
                    throw Error("coefficient involves variable '" + ps[i].ctx()->name(k) + "' outside the x-context");
            Monomial small = xm.truncated(x_ctx->size());
            for (const auto& [j, c] : form.coeffs) cols[j].push_back({small, c});
        }
        for (std::size_t j = 0; j < m; ++j) A.at(i, j) = Polynomial::from_terms(x_ctx, std::move(cols[j]));
    }
    return A;
}

Polynomial determinant(std::vector<Polynomial> M, std::size_t n) {
    if (M.size() != n * n) throw ArityError("determinant needs a square matrix");
    if (n == 0) throw Error("determinant of an empty matrix needs a context");
    const Ctx ctx = M[0].ctx();
    auto at = [&](std::size_t i, std::size_t j) -> Polynomial& { return M[i * n + j]; };
    bool negate = false;
    Polynomial prev = Polynomial::constant(ctx, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k).is_zero()) {
            std::size_t r = k + 1;
            while (r < n && at(r, k).is_zero()) ++r;
            if (r == n) return Polynomial(ctx);
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                if (!(prev.is_constant() && prev.constant_term() == 1)) {
                    auto q = divide_exact(v, prev);
                    if (!q) throw Error("internal: Bareiss division was not exact");
                    v = std::move(*q);
                }
                at(i, j) = std::move(v);
            }
            at(i, k) = Polynomial(ctx);
        }
        prev = at(k, k);
    }
    Polynomial d = at(n - 1, n - 1);
    return negate ? -d : d;
}

namespace {

// Lexicographic k-subsets of {0..n-1}.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

double binom(std::size_t n, std::size_t k) {
    double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

Polynomial sub_det(const PolyMatrix& A, const std::vector<std::size_t>& R, const std::vector<std::size_t>& C) {
    if (R.empty()) return Polynomial::constant(A.ctx(), 1);
    std::vector<Polynomial> M;
    for (std::size_t r : R)
        for (std::size_t c : C) M.push_back(A.at(r, c));
    return determinant(std::move(M), R.size());
}

}  // namespace

std::vector<Minor> minors(const PolyMatrix& A, std::size_t s, std::size_t limit) {
    if (s > std::min(A.rows(), A.cols())) throw Error("minor size out of range");
    if (binom(A.rows(), s) * binom(A.cols(), s) > double(limit))
        throw ResourceLimit("too many minors to enumerate");
    std::vector<Minor> out;
    auto rs = subsets(A.rows(), s), cs = subsets(A.cols(), s);
    for (const auto& R : rs)
        for (const auto& C : cs) out.push_back({R, C, sub_det(A, R, C)});
    return out;
}

bool KernelCell::contains(std::span<const Rational> point) const {
    for (const auto& e : equations)
        if (e.evaluate(point) != 0) return false;
    return inequation.evaluate(point) != 0;
}

namespace {

// Splits each cell along irreducible factors of its equations. A factorization
// g = f_1...f_k with no f_i vanishing on the whole cell yields the pieces
// V(eqs, f_i) minus V(ineq * f_1 ... f_{i-1}); they are disjoint and cover the cell,
// and each is strictly smaller, so the recursion ends.
std::vector<KernelCell> split_components(std::vector<KernelCell> cells) {
    std::vector<KernelCell> out;
    for (auto& cell : cells) {
        if (cell.equations.empty()) {
            out.push_back(std::move(cell));
            continue;
        }
        std::vector<std::pair<std::vector<Polynomial>, Polynomial>> stack{{cell.equations, cell.inequation}};
        while (!stack.empty()) {
            auto [eqs, ineq] = std::move(stack.back());
            stack.pop_back();
            auto G = buchberger(eqs);
            if (G.is_unit()) continue;
            auto gens = G.generators();
            RadicalOracle oracle(gens);
            if (oracle.contains(ineq)) continue;  // empty piece
            bool split = false;
            for (const auto& g : gens) {
                auto fz = irreducible_factors(g);
                if (fz.factors.size() < 2) continue;
                if (std::any_of(fz.factors.begin(), fz.factors.end(), [&](const Polynomial& f) { return oracle.contains(f); }))
                    continue;
                Polynomial guard = ineq;
                std::vector<std::pair<std::vector<Polynomial>, Polynomial>> pieces;
                for (const auto& f : fz.factors) {
                    auto e = gens;
                    e.push_back(f);
                    pieces.emplace_back(std::move(e), guard);
                    guard = guard * f;
                }
                for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) stack.push_back(std::move(*it));
                split = true;
                break;
            }
            if (split) continue;
            // Values on the piece are unchanged by reduction modulo its equations.
            KernelCell piece = cell;
            piece.inequation = normal_form(ineq, G);
            for (std::size_t i = 0; i < piece.kernel.rows(); ++i)
                for (std::size_t k = 0; k < piece.kernel.cols(); ++k) {
                    piece.kernel_poly.at(i, k) = normal_form(piece.kernel_poly.at(i, k), G);
                    piece.kernel.at(i, k) = normal_form(piece.kernel.at(i, k), G);
                    if (piece.kernel.has_denominators())
                        piece.kernel.set_den(i, k, normal_form(piece.kernel.den(i, k), G));
                }
            piece.equations = std::move(gens);
            out.push_back(std::move(piece));
        }
    }
    return out;
}

}  // namespace

std::vector<KernelCell> parametric_kernel_cells(const PolyMatrix& A) {
    const Ctx& ctx = A.ctx();
    std::size_t smax = std::min(A.rows(), A.cols());
    std::vector<KernelCell> cells;
    std::vector<Polynomial> higher;  // nonzero (s+1)-minors
    for (std::size_t s = smax + 1; s-- > 0;) {
        std::vector<Minor> ms;
        if (s == 0)
            ms.push_back({{}, {}, Polynomial::constant(ctx, 1)});
        else
            ms = minors(A, s);
        std::vector<Polynomial> eqs = higher;
        // Reduced equations for presentation and faster radical tests.
        auto reduce_eqs = [&](const std::vector<Polynomial>& e) {
            if (e.empty()) return e;
            return buchberger(e).generators();
        };
        std::vector<Polynomial> cur = reduce_eqs(eqs);
        if (!cur.empty() && cur.size() == 1 && cur[0].is_constant()) break;  // no points of rank <= s
        for (const auto& mn : ms) {
            if (mn.det.is_zero()) continue;
            if (in_radical({mn.det}, cur)) continue;
            // Kernel columns via Cramer: for free column f, entries -det(M with column i replaced by A[R,f]).
            std::vector<std::size_t> free;
            for (std::size_t c = 0; c < A.cols(); ++c)
                if (!std::binary_search(mn.cols.begin(), mn.cols.end(), c)) free.push_back(c);
            PolyMatrix Zp(ctx, A.cols(), free.size());
            for (std::size_t k = 0; k < free.size(); ++k) {
                Zp.at(free[k], k) = mn.det;
                for (std::size_t i = 0; i < s; ++i) {
                    std::vector<Polynomial> M;
                    for (std::size_t r : mn.rows)
                        for (std::size_t c2 = 0; c2 < s; ++c2)
                            M.push_back(c2 == i ? A.at(r, free[k]) : A.at(r, mn.cols[c2]));
                    Zp.at(mn.cols[i], k) = -determinant(std::move(M), s);
                }
            }
            PolyMatrix Z(ctx, A.cols(), free.size());
            bool const_det = mn.det.is_constant();
            for (std::size_t i = 0; i < A.cols(); ++i)
                for (std::size_t k = 0; k < free.size(); ++k) {
                    if (const_det)
                        Z.at(i, k) = Zp.at(i, k) * (Rational(1) / mn.det.constant_term());
                    else {
                        Z.at(i, k) = Zp.at(i, k);
                        Z.set_den(i, k, mn.det);
                    }
                }
            cells.push_back(KernelCell{cur, mn.det, s, mn.rows, mn.cols, std::move(Z), std::move(Zp)});
            eqs.push_back(mn.det);
            cur = reduce_eqs(eqs);
            if (cur.size() == 1 && cur[0].is_constant()) break;
        }
        higher.clear();
        for (auto& mn : ms)
            if (!mn.det.is_zero()) higher.push_back(std::move(mn.det));
    }
    cells = split_components(std::move(cells));
    // Only the zero set of an inequation matters: keep its distinct irreducible factors.
    // Kernel columns may be rescaled by anything nonzero on the cell: strip integer content
    // and common factors of the inequation.
    for (auto& c : cells) {
        std::vector<Polynomial> units;
        if (!c.inequation.is_constant()) {
            auto fz = irreducible_factors(c.inequation);
            c.inequation = fz.complete ? product(fz.factors, ctx) : c.inequation.primitive();
            units = std::move(fz.factors);
        }
        PolyMatrix& Zp = c.kernel_poly;
        for (std::size_t k = 0; k < Zp.cols(); ++k) {
            for (const auto& f : units)
                for (bool divisible = true; divisible;) {
                    std::vector<Polynomial> q;
                    for (std::size_t i = 0; i < Zp.rows() && divisible; ++i) {
                        auto r = divide_exact(Zp.at(i, k), f);
                        if (r) q.push_back(std::move(*r));
                        else divisible = false;
                    }
                    if (divisible)
                        for (std::size_t i = 0; i < Zp.rows(); ++i) Zp.at(i, k) = std::move(q[i]);
                }
            Integer g = 0, l = 1;
            for (std::size_t i = 0; i < Zp.rows(); ++i)
                for (const auto& t : Zp.at(i, k).terms()) {
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
                }
            if (g != 0) {
                Rational scale(l, g);
                scale.canonicalize();
                for (std::size_t i = 0; i < Zp.rows(); ++i) Zp.at(i, k) = Zp.at(i, k) * scale;
            }
        }
    }
    return cells;
}

std::optional<std::size_t> locate_cell(const std::vector<KernelCell>& cells, std::span<const Rational> point) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].contains(point)) return i;
    return std::nullopt;
}

}  // namespace polyinv
