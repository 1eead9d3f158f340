#include "polyinv/general.hpp"

#include "polyinv/errors.hpp"
#include "polyinv/linalg.hpp"

namespace polyinv {

std::string GeneralInvariant::presentation() const {
    const Ctx& ctx = f.ctx();
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= ctx->size(); ++i) names.push_back("a" + std::to_string(i));
    std::vector<std::size_t> id(ctx->size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    Polynomial fa = f.renamed(make_context(names), id);
    return f.to_string() + " - (" + fa.to_string() + ")";
}

Polynomial GeneralInvariant::instantiate(std::span<const Rational> a) const {
    return f - Polynomial::constant(f.ctx(), f.evaluate(a));
}

GeneralReport general_invariants_report(const std::vector<Polynomial>& gs, const std::vector<PolyMap>& Fs) {
    GeneralReport rep;
    if (gs.empty()) return rep;
    const Ctx& x_ctx = gs[0].ctx();
    const std::size_t n = x_ctx->size(), m = gs.size();
    std::vector<std::string> ys;
    Ctx cur = x_ctx;
    for (std::size_t i = 1; i <= m; ++i) {
        ys.push_back(fresh_name(*cur, "y" + std::to_string(i)));
        cur = extend(cur, {ys.back()});
    }
    Ctx ctx = extend(x_ctx, ys);
    Polynomial g(ctx);
    for (std::size_t i = 0; i < m; ++i) g += Polynomial::variable(ctx, n + i) * gs[i].lifted(ctx);
    std::vector<LinearForm> forms;
    for (const auto& F : Fs) {
        if (F.size() != n) throw ArityError("map arity does not match the number of program variables");
        Polynomial D = g - compose(g, F);
        for (auto& [mono, form] : coefficients_wrt_x(D, n, n + m)) forms.push_back(std::move(form));
    }
    rep.forms = forms.size();
    auto K = kernel_of_linear_forms(forms, m);
    rep.raw_kernel = K.size();
    std::vector<Polynomial> fs;
    for (const auto& v : K) {
        Polynomial f = combine(v, gs, x_ctx);
        f = f - Polynomial::constant(x_ctx, f.constant_term());
        if (!f.is_zero()) fs.push_back(std::move(f));
    }
    if (fs.empty()) return rep;
    // Reduced echelon form over the monomial coordinates (largest monomial first).
    QMatrix C = coefficient_matrix(fs);
    std::vector<Monomial> monos;
    {
        std::vector<Term> all;
        for (const auto& f : fs)
            for (const auto& t : f.terms()) all.push_back({t.mono, 1});
        Polynomial merged = Polynomial::from_terms(x_ctx, all);
        for (const auto& t : merged.terms()) monos.push_back(t.mono);
    }
    for (const auto& row : rref(C).rows) {
        std::vector<Term> terms;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) terms.push_back({monos[j], row[j]});
        rep.invariants.push_back({Polynomial::from_terms(x_ctx, std::move(terms)).primitive()});
    }
    return rep;
}

std::vector<GeneralInvariant> general_invariants(const std::vector<Polynomial>& gs, const std::vector<PolyMap>& Fs) {
    return general_invariants_report(gs, Fs).invariants;
}

bool check_fixed_identity(const Polynomial& f, const std::vector<PolyMap>& Fs) {
    for (const auto& F : Fs)
        if (compose(f, F) != f) return false;
    return true;
}

std::optional<GeneralInvariant> reduce_scaled_form(const Polynomial& P, const Polynomial& g,
                                                   const std::vector<PolyMap>& Fs) {
    if (P.is_zero()) throw Error("scaling polynomial must be nonzero");
    auto f = divide_exact(g, P);
    if (!f || !check_fixed_identity(*f, Fs)) return std::nullopt;
    return GeneralInvariant{*f};
}

}  // namespace polyinv
