#include "polyinv/groebner.hpp"

#include "polyinv/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polyinv {

namespace {

using Terms = std::vector<Term>;

struct OrderGreater {
    MonomialOrder order;
    bool operator()(const Monomial& a, const Monomial& b) const { return order.compare(a, b) > 0; }
};

Terms to_terms(const Polynomial& p, const MonomialOrder& order) {
    Terms t = p.terms();
    std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
    return t;
}

void make_monic(Terms& t) {
    if (t.empty() || t[0].coeff == 1) return;
    Rational inv = 1 / t[0].coeff;
    for (auto& x : t) x.coeff *= inv;
}

bool is_constant(const Terms& t) { return t.size() == 1 && t[0].mono.is_one(); }

// Full reduction of `f` by monic divisors. Result is sorted by the order, largest first.
Terms reduce_full(const Terms& f, const std::vector<const Terms*>& divs, const MonomialOrder& order) {
    std::map<Monomial, Rational, OrderGreater> acc(OrderGreater{order});
    for (const auto& t : f) acc.emplace(t.mono, t.coeff);
    Terms out;
    while (!acc.empty()) {
        auto it = acc.begin();
        const Terms* div = nullptr;
        for (const Terms* d : divs)
            if ((*d)[0].mono.divides(it->first)) {
                div = d;
                break;
            }
        if (!div) {
            out.push_back({it->first, std::move(it->second)});
            acc.erase(it);
            continue;
        }
        Monomial mult = it->first / (*div)[0].mono;
        Rational q = std::move(it->second);
        acc.erase(it);
        for (std::size_t k = 1; k < div->size(); ++k) {
            Monomial m = (*div)[k].mono * mult;
            auto [pos, inserted] = acc.try_emplace(std::move(m));
            if (inserted)
                pos->second = -(q * (*div)[k].coeff);
            else {
                pos->second -= q * (*div)[k].coeff;
                if (pos->second == 0) acc.erase(pos);
            }
        }
    }
    return out;
}

Terms spoly(const Terms& f, const Terms& g, const Monomial& lcm, const MonomialOrder& order) {
    Monomial mf = lcm / f[0].mono, mg = lcm / g[0].mono;
    std::map<Monomial, Rational, OrderGreater> acc(OrderGreater{order});
    for (std::size_t k = 1; k < f.size(); ++k) acc[f[k].mono * mf] += f[k].coeff;
    for (std::size_t k = 1; k < g.size(); ++k) acc[g[k].mono * mg] -= g[k].coeff;
    Terms out;
    for (auto& [m, c] : acc)
        if (c != 0) out.push_back({m, c});
    return out;
}

Polynomial to_poly(const Ctx& ctx, const Terms& t) { return Polynomial::from_terms(ctx, t); }

}  // namespace

std::vector<Polynomial> GroebnerBasis::generators() const {
    std::vector<Polynomial> out;
    out.reserve(polys_.size());
    for (const auto& p : polys_) out.push_back(to_poly(ctx_, p));
    return out;
}

class BuchbergerEngine {
public:
    BuchbergerEngine(Ctx ctx, MonomialOrder order, GroebnerStats* stats)
        : ctx_(std::move(ctx)), order_(order), stats_(stats) {}

    // Elements that already form a Groebner basis together.
    void seed(const GroebnerBasis& G) {
        for (const auto& p : G.raw()) {
            store_.push_back(p);
            active_.push_back(store_.size() - 1);
        }
    }

    // Returns false when the ideal became the unit ideal.
    bool add(const Polynomial& p) {
        Terms t = to_terms(p, order_);
        return insert(std::move(t));
    }

    bool run() {
        while (!pairs_.empty()) {
            Pair pr = *pairs_.begin();
            pairs_.erase(pairs_.begin());
            if (stats_) ++stats_->pairs_processed;
            Terms s = spoly(store_[pr.i], store_[pr.j], pr.lcm, order_);
            if (!insert(std::move(s))) return false;
        }
        return true;
    }

    GroebnerBasis finish(bool unit) {
        GroebnerBasis G(ctx_, order_);
        if (unit) {
            G.polys_.push_back({Term{Monomial(ctx_->size()), 1}});
            return G;
        }
        std::vector<Terms> basis;
        for (std::size_t idx : active_) basis.push_back(store_[idx]);
        // Inter-reduce tails; leading monomials are already pairwise non-divisible.
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<const Terms*> others;
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (j != i) others.push_back(&basis[j]);
            Terms tail(basis[i].begin() + 1, basis[i].end());
            Terms red = reduce_full(tail, others, order_);
            Terms full{basis[i][0]};
            full.insert(full.end(), red.begin(), red.end());
            basis[i] = std::move(full);
        }
        std::sort(basis.begin(), basis.end(),
                  [&](const Terms& a, const Terms& b) { return order_.compare(a[0].mono, b[0].mono) < 0; });
        G.polys_ = std::move(basis);
        return G;
    }

private:
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        std::size_t seq;
    };
    struct PairLess {
        MonomialOrder order;
        bool operator()(const Pair& a, const Pair& b) const {
            int c = order.compare(a.lcm, b.lcm);
            if (c != 0) return c < 0;
            return a.seq < b.seq;
        }
    };

    std::vector<const Terms*> divisors() const {
        std::vector<const Terms*> d;
        d.reserve(active_.size());
        for (std::size_t idx : active_) d.push_back(&store_[idx]);
        return d;
    }

    bool insert(Terms t) {
        Terms h = reduce_full(t, divisors(), order_);
        if (h.empty()) {
            if (stats_) ++stats_->zero_reductions;
            return true;
        }
        make_monic(h);
        if (is_constant(h)) return false;
        store_.push_back(std::move(h));
        update(store_.size() - 1);
        return true;
    }

    // Gebauer-Moeller installation of the product and chain criteria.
    void update(std::size_t h) {
        const Monomial& lh = store_[h][0].mono;
        struct Cand {
            std::size_t g;
            Monomial lcm;
            bool coprime;
            bool alive = true;
        };
        std::vector<Cand> C;
        for (std::size_t g : active_) {
            const Monomial& lg = store_[g][0].mono;
            C.push_back({g, Monomial::lcm(lh, lg), Monomial::coprime(lh, lg)});
        }
        std::vector<Cand*> D;
        for (std::size_t a = 0; a < C.size(); ++a) {
            Cand& p = C[a];
            bool keep = p.coprime;
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < C.size() && keep; ++b)
                    if (C[b].lcm.divides(p.lcm)) keep = false;
                for (const Cand* q : D)
                    if (!keep) break;
                    else if (q->lcm.divides(p.lcm)) keep = false;
            }
            if (keep) D.push_back(&p);
            else if (stats_) ++stats_->pairs_skipped;
        }
        // Chain criterion on old pairs.
        for (auto it = pairs_.begin(); it != pairs_.end();) {
            const Monomial& li = store_[it->i][0].mono;
            const Monomial& lj = store_[it->j][0].mono;
            if (lh.divides(it->lcm) && Monomial::lcm(li, lh) != it->lcm && Monomial::lcm(lj, lh) != it->lcm) {
                it = pairs_.erase(it);
                if (stats_) ++stats_->pairs_skipped;
            } else
                ++it;
        }
        for (const Cand* p : D) {
            if (p->coprime) {
                if (stats_) ++stats_->pairs_skipped;
                continue;
            }
            pairs_.insert(Pair{p->g, h, p->lcm, seq_++});
        }
        std::vector<std::size_t> next;
        for (std::size_t g : active_)
            if (!lh.divides(store_[g][0].mono)) next.push_back(g);
        next.push_back(h);
        active_ = std::move(next);
    }

    Ctx ctx_;
    MonomialOrder order_;
    GroebnerStats* stats_;
    std::vector<Terms> store_;
    std::vector<std::size_t> active_;
    std::set<Pair, PairLess> pairs_{PairLess{order_}};
    std::size_t seq_ = 0;
};

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, MonomialOrder order, GroebnerStats* stats) {
    if (gens.empty()) throw Error("buchberger needs at least one generator to fix the context");
    Ctx ctx = gens[0].ctx();
    BuchbergerEngine eng(ctx, order, stats);
    bool ok = true;
    for (const auto& g : gens) {
        if (!same_context(g.ctx(), ctx)) throw ContextMismatch();
        if (g.is_zero()) continue;
        if (!(ok = eng.add(g))) break;
    }
    if (ok) ok = eng.run();
    return eng.finish(!ok);
}

GroebnerBasis extend_basis(const GroebnerBasis& G, const std::vector<Polynomial>& extra, GroebnerStats* stats) {
    if (G.is_unit()) return G;
    BuchbergerEngine eng(G.ctx(), G.order(), stats);
    eng.seed(G);
    bool ok = true;
    for (const auto& g : extra) {
        if (!same_context(g.ctx(), G.ctx())) throw ContextMismatch();
        if (g.is_zero()) continue;
        if (!(ok = eng.add(g))) break;
    }
    if (ok) ok = eng.run();
    return eng.finish(!ok);
}

GroebnerBasis lift_basis(const GroebnerBasis& G, const Ctx& bigger) {
    if (!G.ctx()->is_prefix_of(*bigger)) throw ContextMismatch();
    // Appending variables that do not occur keeps the basis reduced under grevlex and lex.
    GroebnerBasis out(bigger, G.order());
    for (const auto& p : G.polys_) {
        Terms t;
        t.reserve(p.size());
        for (const auto& x : p) t.push_back({x.mono.padded(bigger->size()), x.coeff});
        out.polys_.push_back(std::move(t));
    }
    return out;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
    if (!same_context(f.ctx(), G.ctx())) throw ContextMismatch();
    std::vector<const Terms*> divs;
    for (const auto& p : G.raw()) divs.push_back(&p);
    return to_poly(f.ctx(), reduce_full(to_terms(f, G.order()), divs, G.order()));
}

bool ideal_membership(const Polynomial& f, const std::vector<Polynomial>& S) {
    if (f.is_zero()) return true;
    std::vector<Polynomial> nz;
    for (const auto& s : S)
        if (!s.is_zero()) nz.push_back(s);
    if (nz.empty()) return false;
    return normal_form(f, buchberger(nz)).is_zero();
}

Monomial leading_monomial(const Polynomial& f, MonomialOrder order) {
    if (f.is_zero()) throw Error("leading monomial of the zero polynomial");
    const Term* best = &f.terms()[0];
    for (const auto& t : f.terms())
        if (order.compare(t.mono, best->mono) > 0) best = &t;
    return best->mono;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder order) {
    if (!same_context(f.ctx(), g.ctx())) throw ContextMismatch();
    Terms a = to_terms(f, order), b = to_terms(g, order);
    make_monic(a);
    make_monic(b);
    return to_poly(f.ctx(), spoly(a, b, Monomial::lcm(a[0].mono, b[0].mono), order));
}

namespace {

// Exponent of `v` dividing every term, and whether the cofactor is free of v.
bool pure_variable_factor(const Polynomial& p, std::size_t v) {
    unsigned lo = ~0u, hi = 0;
    for (const auto& t : p.terms()) {
        lo = std::min(lo, t.mono[v]);
        hi = std::max(hi, t.mono[v]);
    }
    return lo >= 1 && lo == hi;
}

Polynomial strip(const Polynomial& p, const std::vector<bool>& mask) {
    if (p.is_zero()) return p;
    Monomial m(p.ctx()->size());
    for (std::size_t v = 0; v < mask.size(); ++v)
        if (mask[v]) m.set(v, p.terms()[0].mono[v]);
    if (m.is_one()) return p;
    std::vector<Term> out;
    for (const auto& t : p.terms()) out.push_back({t.mono / m, t.coeff});
    return Polynomial::from_terms(p.ctx(), std::move(out));
}

}  // namespace

// When every polynomial of S and f has the shape v^e * q with q free of v, then
// f is in rad<S> iff the v-free cofactors are: the minimal primes of <S> either
// contain v, where f vanishes anyway, or are extended from the v-free subring.
RadicalOracle::RadicalOracle(std::vector<Polynomial> S) {
    for (auto& s : S)
        if (!s.is_zero()) S_.push_back(std::move(s));
    if (S_.empty()) return;
    const Ctx& ctx = S_[0].ctx();
    strippable_.assign(ctx->size(), true);
    for (const auto& s : S_) {
        if (!same_context(s.ctx(), ctx)) throw ContextMismatch();
        for (std::size_t v = 0; v < ctx->size(); ++v)
            if (strippable_[v] && !pure_variable_factor(s, v)) strippable_[v] = false;
    }
}

const GroebnerBasis& RadicalOracle::basis_for(const std::vector<bool>& mask) {
    for (const auto& [m, G] : cache_)
        if (m == mask) return G;
    std::vector<Polynomial> stripped;
    for (const auto& s : S_) stripped.push_back(strip(s, mask));
    cache_.emplace_back(mask, buchberger(stripped));
    return cache_.back().second;
}

bool RadicalOracle::contains(const Polynomial& f) {
    if (f.is_zero()) return true;
    if (S_.empty()) return false;
    if (!same_context(f.ctx(), S_[0].ctx())) throw ContextMismatch();
    std::vector<bool> mask(strippable_.size(), false);
    for (std::size_t v = 0; v < mask.size(); ++v) mask[v] = strippable_[v] && pure_variable_factor(f, v);
    Polynomial g = strip(f, mask);
    const GroebnerBasis& G = basis_for(mask);
    if (G.is_unit()) return true;
    if (normal_form(g, G).is_zero()) {
        ++counters_.membership_hits;
        return true;
    }
    ++counters_.rabinowitsch_runs;
    const Ctx& ctx = g.ctx();
    Ctx ctx_t = extend(ctx, {fresh_name(*ctx, "t")});
    Polynomial t = Polynomial::variable(ctx_t, ctx->size());
    Polynomial rab = Polynomial::constant(ctx_t, 1) - t * g.lifted(ctx_t);
    return extend_basis(lift_basis(G, ctx_t), {rab}).is_unit();
}

bool in_radical(const std::vector<Polynomial>& fs, const std::vector<Polynomial>& S) {
    RadicalOracle oracle(S);
    for (const auto& f : fs)
        if (!oracle.contains(f)) return false;
    return true;
}

}  // namespace polyinv
