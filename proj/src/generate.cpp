#include "polyinv/generate.hpp"

#include "polyinv/errors.hpp"
#include "polyinv/loop.hpp"

#include <algorithm>
#include <deque>

namespace polyinv {

namespace {

std::vector<std::string> y_names(const Ctx& x_ctx, std::size_t m) {
    std::vector<std::string> names;
    Ctx cur = x_ctx;
    for (std::size_t i = 1; i <= m; ++i) {
        std::string nm = fresh_name(*cur, "y" + std::to_string(i));
        cur = extend(cur, {nm});
        names.push_back(nm);
    }
    return names;
}

void require_gens(const std::vector<Polynomial>& gs) {
    if (gs.empty()) throw Error("the candidate space needs at least one generator");
    for (const auto& g : gs)
        if (!same_context(g.ctx(), gs[0].ctx())) throw ContextMismatch();
}

}  // namespace

AnsatzMatrix compute_matrix_branch(const std::vector<Polynomial>& gs, const std::vector<Polynomial>& hs,
                                   const std::vector<PolyMap>& Fs, std::size_t max_iter) {
    require_gens(gs);
    const Ctx& x_ctx = gs[0].ctx();
    const std::size_t n = x_ctx->size(), m = gs.size();
    GuardedSystem sys = guarded_system(x_ctx, hs, Fs, y_names(x_ctx, m));
    Polynomial g(sys.ctx);
    for (std::size_t i = 0; i < m; ++i) g += Polynomial::variable(sys.ctx, n + i) * gs[i].lifted(sys.ctx);
    auto R = invariant_set_branch({sys.z * g}, sys.maps, max_iter);
    std::vector<Polynomial> rows;
    const std::size_t zi = sys.ctx->size() - 1;
    for (const auto& p : R.polynomials()) rows.push_back(p.substitute(zi, 1));
    return AnsatzMatrix{matrix_from_linear_polys(rows, n, m, x_ctx), gs, R.iterations};
}

AnsatzMatrix compute_matrix(const std::vector<Polynomial>& gs, const std::vector<Polynomial>& hs, const PolyMap& F,
                            std::size_t max_iter) {
    return compute_matrix_branch(gs, hs, std::vector<PolyMap>{F}, max_iter);
}

bool ConstructibleCell::contains(std::span<const Rational> a) const {
    for (const auto& e : equations)
        if (e.evaluate(a) != 0) return false;
    return inequation.evaluate(a) != 0;
}

std::vector<Polynomial> ConstructibleCell::instantiate(std::span<const Rational> a, const Ctx& x_ctx) const {
    std::vector<Polynomial> out;
    const std::size_t n = x_ctx->size();
    for (const auto& t : templates) {
        Polynomial p = t;
        for (std::size_t i = 0; i < n; ++i) p = p.substitute(n + i, a[i]);
        out.push_back(p.restricted(x_ctx));
    }
    return out;
}

ClassResult truncated_class(const std::vector<Polynomial>& gs, const std::vector<Polynomial>& hs,
                            const std::vector<PolyMap>& Fs, std::size_t max_iter) {
    AnsatzMatrix ans = compute_matrix_branch(gs, hs, Fs, max_iter);
    const Ctx& x_ctx = gs[0].ctx();
    const std::size_t n = x_ctx->size();
    std::vector<std::string> a_names;
    {
        Ctx cur = x_ctx;
        for (std::size_t i = 1; i <= n; ++i) {
            std::string nm = fresh_name(*cur, "a" + std::to_string(i));
            cur = extend(cur, {nm});
            a_names.push_back(nm);
        }
    }
    Ctx a_ctx = make_context(a_names);
    Ctx xa_ctx = extend(x_ctx, a_names);
    std::vector<std::size_t> to_a(n), to_xa(n);
    for (std::size_t i = 0; i < n; ++i) {
        to_a[i] = i;
        to_xa[i] = n + i;
    }
    ClassResult out{ans, a_ctx, xa_ctx, {}};
    for (auto& cell : parametric_kernel_cells(ans.matrix)) {
        ConstructibleCell c{{}, cell.inequation.renamed(a_ctx, to_a), cell.rank, PolyMatrix(a_ctx, cell.kernel.rows(), cell.kernel.cols()), {}};
        for (const auto& e : cell.equations) c.equations.push_back(e.renamed(a_ctx, to_a));
        for (std::size_t i = 0; i < cell.kernel.rows(); ++i)
            for (std::size_t k = 0; k < cell.kernel.cols(); ++k) {
                c.kernel.at(i, k) = cell.kernel.at(i, k).renamed(a_ctx, to_a);
                if (cell.kernel.has_denominators()) c.kernel.set_den(i, k, cell.kernel.den(i, k).renamed(a_ctx, to_a));
            }
        for (std::size_t k = 0; k < cell.kernel_poly.cols(); ++k) {
            Polynomial t(xa_ctx);
            for (std::size_t i = 0; i < gs.size(); ++i)
                t += gs[i].lifted(xa_ctx) * cell.kernel_poly.at(i, k).renamed(xa_ctx, to_xa);
            c.templates.push_back(std::move(t));
        }
        out.cells.push_back(std::move(c));
    }
    return out;
}

namespace {

// Breadth-first traversal of branch words, generic over exact and modular arithmetic.
// `emit(values, level)` receives guard-prefix * g_i(point) for each word; returns the
// deepest fully processed level and whether the word cap was hit.
template <class Num, class Ops>
std::pair<std::size_t, bool> walk_words(const std::vector<Num>& a, std::size_t K, std::size_t cap, Ops& ops) {
    struct Node {
        std::vector<Num> point;
        Num prefix;
    };
    std::vector<Node> level{{a, ops.one()}};
    std::size_t words = 1;
    for (std::size_t depth = 0;; ++depth) {
        for (const auto& nd : level) ops.emit(nd.prefix, nd.point);
        if (depth == K) return {K, false};
        std::vector<Node> next;
        for (const auto& nd : level) {
            Num pref = ops.mul(nd.prefix, ops.guard(nd.point));
            if (ops.is_zero(pref)) continue;
            for (std::size_t b = 0; b < ops.branches(); ++b) next.push_back({ops.step(b, nd.point), pref});
        }
        if (next.empty()) return {K, false};  // every path exited: deeper forms are zero
        words += next.size();
        if (words > cap) return {depth, true};
        for (const auto& nd : next)
            if (!ops.admit(nd.point)) return {depth, false};
        level = std::move(next);
    }
}

std::size_t bit_size(const Rational& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

struct ExactOps {
    const std::vector<Polynomial>& gs;
    const Polynomial& h;
    const std::vector<PolyMap>& Fs;
    std::size_t budget;  // 0 means unlimited
    std::vector<QVector> rows;

    Rational one() const { return 1; }
    Rational mul(const Rational& a, const Rational& b) const { return a * b; }
    bool is_zero(const Rational& a) const { return a == 0; }
    std::size_t branches() const { return Fs.size(); }
    Rational guard(const std::vector<Rational>& p) const { return h.evaluate(p); }
    std::vector<Rational> step(std::size_t b, const std::vector<Rational>& p) const { return apply_map(Fs[b], p); }
    bool admit(const std::vector<Rational>& p) const {
        if (budget == 0) return true;
        for (const auto& v : p)
            if (bit_size(v) > budget) return false;
        return true;
    }
    void emit(const Rational& prefix, const std::vector<Rational>& p) {
        if (prefix == 0) return;
        QVector row;
        bool nz = false;
        for (const auto& g : gs) {
            row.push_back(prefix * g.evaluate(p));
            nz = nz || row.back() != 0;
        }
        if (nz) rows.push_back(std::move(row));
    }
};

struct ModPoly {
    std::vector<std::pair<Monomial, modp::u64>> terms;

    static std::optional<ModPoly> from(const Polynomial& p, modp::u64 q) {
        ModPoly out;
        for (const auto& t : p.terms()) {
            auto c = modp::reduce(t.coeff, q);
            if (!c) return std::nullopt;
            if (*c) out.terms.emplace_back(t.mono, *c);
        }
        return out;
    }

    modp::u64 eval(const std::vector<modp::u64>& x, modp::u64 q) const {
        modp::u64 s = 0;
        for (const auto& [m, c] : terms) {
            modp::u64 v = c;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (m[i]) v = modp::mul(v, modp::pow(x[i], m[i], q), q);
            s = (s + v) % q;
        }
        return s;
    }
};

struct ModOps {
    modp::u64 p;
    std::vector<ModPoly> gs;
    ModPoly h;
    std::vector<std::vector<ModPoly>> Fs;
    std::vector<std::vector<modp::u64>> rows;

    modp::u64 one() const { return 1; }
    modp::u64 mul(modp::u64 a, modp::u64 b) const { return modp::mul(a, b, p); }
    bool is_zero(modp::u64 a) const { return a == 0; }
    std::size_t branches() const { return Fs.size(); }
    modp::u64 guard(const std::vector<modp::u64>& x) const { return h.eval(x, p); }
    std::vector<modp::u64> step(std::size_t b, const std::vector<modp::u64>& x) const {
        std::vector<modp::u64> out;
        for (const auto& f : Fs[b]) out.push_back(f.eval(x, p));
        return out;
    }
    bool admit(const std::vector<modp::u64>&) const { return true; }
    void emit(modp::u64 prefix, const std::vector<modp::u64>& x) {
        if (prefix == 0) return;
        std::vector<modp::u64> row;
        for (const auto& g : gs) row.push_back(modp::mul(prefix, g.eval(x, p), p));
        rows.push_back(std::move(row));
    }
};

}  // namespace

ConstraintSet sufficient_constraints(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                                     const std::vector<Polynomial>& hs, const std::vector<PolyMap>& Fs, std::size_t K,
                                     std::size_t word_cap) {
    require_gens(gs);
    const Ctx& x_ctx = gs[0].ctx();
    if (a.size() != x_ctx->size()) throw ArityError("initial point has the wrong number of entries");
    Polynomial h = product(hs, x_ctx);
    ExactOps ops{gs, h, Fs, 0, {}};
    auto [depth, capped] = walk_words(a, K, word_cap, ops);
    ConstraintSet out;
    out.depth = depth;
    out.word_cap_hit = capped;
    for (const auto& row : ops.rows) {
        LinearForm f;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) f.coeffs[j] = row[j];
        out.forms.push_back(std::move(f));
    }
    return out;
}

std::vector<Polynomial> canonical_basis(const std::vector<Polynomial>& ps, const std::vector<Polynomial>& gens) {
    if (ps.empty()) return {};
    auto coords = coordinates(ps, gens);
    if (!coords) throw Error("polynomial outside the candidate space");
    std::vector<Polynomial> out;
    for (const auto& v : canonical_span(*coords, gens.size())) out.push_back(combine(v, gens, gens[0].ctx()));
    return out;
}

namespace {

std::vector<Polynomial> vectors_to_polys(const std::vector<QVector>& vs, const std::vector<Polynomial>& gs) {
    std::vector<Polynomial> out;
    for (const auto& v : vs) out.push_back(combine(v, gs, gs[0].ctx()));
    return out;
}

bool in_span(const Polynomial& p, const std::vector<Polynomial>& span) {
    if (p.is_zero()) return true;
    if (span.empty()) return false;
    std::vector<Polynomial> all(span);
    std::size_t r0 = rank(coefficient_matrix(all));
    all.push_back(p);
    return rank(coefficient_matrix(all)) == r0;
}

}  // namespace

InvariantBasis truncated_ideal_branch(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                                      const std::vector<Polynomial>& hs, const std::vector<PolyMap>& Fs,
                                      const TruncatedOptions& opts) {
    require_gens(gs);
    const Ctx& x_ctx = gs[0].ctx();
    if (a.size() != x_ctx->size()) throw ArityError("initial point has the wrong number of entries");
    if (Fs.empty()) throw ArityError("at least one branch is required");
    InvariantBasis out;
    out.gens = gs;
    const std::size_t m = gs.size();
    const std::size_t K = opts.depth.value_or(m);
    Polynomial h = product(hs, x_ctx);

    if (h.is_zero()) {
        // The loop never iterates: invariants are the candidates vanishing at a.
        ExactOps ops{gs, h, Fs, 0, {}};
        ops.emit(1, a);
        auto B = kernel_basis(QMatrix::from_rows(ops.rows, m));
        out.basis = canonical_basis(vectors_to_polys(B, gs), gs);
        out.provenance.assign(out.basis.size(), Provenance::BatchCheck);
        out.stage1 = "maximal-ideal";
        return out;
    }

    // Stage 1: exact constraints while coefficients stay small.
    ExactOps ex{gs, h, Fs, opts.allow_modular ? opts.exact_bit_budget : 0, {}};
    auto [depth, capped] = walk_words(a, K, opts.word_cap, ex);
    out.word_cap_hit = capped;
    if (depth < K && !capped && opts.allow_modular) {
        auto rows_mod = [&](modp::u64 p) -> std::optional<std::vector<std::vector<modp::u64>>> {
            ModOps mo{p, {}, {}, {}, {}};
            for (const auto& g : gs) {
                auto r = ModPoly::from(g, p);
                if (!r) return std::nullopt;
                mo.gs.push_back(std::move(*r));
            }
            auto hr = ModPoly::from(h, p);
            if (!hr) return std::nullopt;
            mo.h = std::move(*hr);
            for (const auto& F : Fs) {
                std::vector<ModPoly> Fm;
                for (const auto& f : F) {
                    auto r = ModPoly::from(f, p);
                    if (!r) return std::nullopt;
                    Fm.push_back(std::move(*r));
                }
                mo.Fs.push_back(std::move(Fm));
            }
            std::vector<modp::u64> am;
            for (const auto& v : a) {
                auto r = modp::reduce(v, p);
                if (!r) return std::nullopt;
                am.push_back(*r);
            }
            walk_words(am, K, opts.word_cap, mo);
            return std::move(mo.rows);
        };
        auto mk = modular_kernel(rows_mod, m);
        if (mk) {
            auto cands = vectors_to_polys(mk->basis, gs);
            std::size_t iters = 0;
            auto ok = check_pi_batch(a, cands, hs, Fs, opts.max_iter, &iters);
            if (std::all_of(ok.begin(), ok.end(), [](bool b) { return b; })) {
                // Every reconstructed vector is an invariant and their number equals the
                // modular kernel dimension, which bounds the invariant dimension from above.
                out.basis = canonical_basis(cands, gs);
                out.provenance.assign(out.basis.size(), Provenance::BatchCheck);
                out.iterations = iters;
                out.constraint_depth = K;
                out.stage1 = "modular";
                return out;
            }
        }
    }

    auto B = kernel_basis(QMatrix::from_rows(ex.rows, m));
    out.constraint_depth = depth;
    out.stage1 = depth >= K ? "exact" : "exact-truncated";
    auto cands = vectors_to_polys(B, gs);

    // Stage 2.
    std::size_t iters = 0;
    auto ok = check_pi_batch(a, cands, hs, Fs, opts.max_iter, &iters);
    out.iterations = iters;
    std::vector<Polynomial> pass, fail;
    for (std::size_t i = 0; i < cands.size(); ++i) (ok[i] ? pass : fail).push_back(cands[i]);
    if (fail.empty()) {
        out.basis = canonical_basis(cands, gs);
        out.provenance.assign(out.basis.size(), Provenance::BatchCheck);
        return out;
    }

    // Stage 3: invariants inside the span of the failing candidates.
    out.stage3_used = true;
    AnsatzMatrix A = compute_matrix_branch(fail, hs, Fs, opts.max_iter);
    std::vector<Polynomial> all = pass;
    for (const auto& c : kernel_basis(A.matrix.evaluate(a))) all.push_back(combine(c, fail, x_ctx));
    out.basis = canonical_basis(all, gs);
    for (const auto& b : out.basis)
        out.provenance.push_back(in_span(b, pass) ? Provenance::BatchCheck : Provenance::MatrixStage);
    return out;
}

InvariantBasis truncated_ideal(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                               const std::vector<Polynomial>& hs, const PolyMap& F, const TruncatedOptions& opts) {
    return truncated_ideal_branch(a, gs, hs, std::vector<PolyMap>{F}, opts);
}

}  // namespace polyinv
