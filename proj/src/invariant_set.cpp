#include "polyinv/invariant_set.hpp"

#include "polyinv/errors.hpp"
#include "polyinv/groebner.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace polyinv {

std::vector<Polynomial> InvariantSetResult::polynomials() const {
    std::vector<Polynomial> out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

namespace {

std::vector<std::string> printed(const std::vector<std::vector<Polynomial>>& blocks) {
    std::vector<std::string> out;
    for (const auto& b : blocks)
        for (const auto& p : b) out.push_back(p.to_string());
    return out;
}

// Called on each new block as soon as it is computed; returning true ends the fixpoint
// early (the result then holds the blocks so far and iterations = blocks - 1).
using BlockHook = std::function<bool(const std::vector<Polynomial>&, const std::vector<std::vector<std::size_t>>&)>;

InvariantSetResult fixpoint(const std::vector<Polynomial>& g, const std::vector<PolyMap>& Fs, std::size_t max_iter,
                            const BlockHook& hook) {
    if (Fs.empty()) throw ArityError("at least one map is required");
    if (g.empty()) throw ArityError("at least one polynomial is required");
    const Ctx& ctx = g[0].ctx();
    for (const auto& F : Fs)
        if (F.size() > ctx->size() || (Fs[0].size() != F.size()))
            throw ArityError("every map must have one entry per variable of the fixpoint context");
    InvariantSetResult R;
    R.blocks.push_back(g);
    R.origins.emplace_back();
    for (std::size_t i = 0; i < g.size(); ++i) R.origins.back().push_back({i});
    if (hook && hook(R.blocks.back(), R.origins.back())) return R;
    std::vector<Polynomial> S = g;
    RadicalOracle oracle(S);

    // Unique maps only: duplicate branches produce the same compositions.
    std::vector<const PolyMap*> maps;
    for (const auto& F : Fs) {
        bool dup = false;
        for (const PolyMap* M : maps) dup = dup || *M == F;
        if (!dup) maps.push_back(&F);
    }

    for (std::size_t round = 0;; ++round) {
        const auto& frontier = R.blocks.back();
        const auto& fr_origins = R.origins.back();
        std::vector<Polynomial> next;
        std::vector<std::vector<std::size_t>> next_origins;
        for (const PolyMap* F : maps) {
            auto composed = compose(frontier, *F);
            for (std::size_t k = 0; k < composed.size(); ++k) {
                Polynomial& p = composed[k];
                if (p.is_zero()) continue;
                auto it = std::find(next.begin(), next.end(), p);
                if (it != next.end()) {
                    auto& o = next_origins[static_cast<std::size_t>(it - next.begin())];
                    for (std::size_t x : fr_origins[k])
                        if (std::find(o.begin(), o.end(), x) == o.end()) o.push_back(x);
                    continue;
                }
                if (std::find(S.begin(), S.end(), p) != S.end()) continue;
                next.push_back(std::move(p));
                next_origins.push_back(fr_origins[k]);
            }
        }
        bool stable = true;
        for (const auto& p : next)
            if (!oracle.contains(p)) {
                stable = false;
                break;
            }
        if (stable) {
            R.iterations = round;
            return R;
        }
        if (round == max_iter) throw IterationLimitExceeded(max_iter, printed(R.blocks));
        S.insert(S.end(), next.begin(), next.end());
        R.blocks.push_back(std::move(next));
        R.origins.push_back(std::move(next_origins));
        if (hook && hook(R.blocks.back(), R.origins.back())) {
            R.iterations = round + 1;
            return R;
        }
        oracle = RadicalOracle(S);
    }
}

}  // namespace

InvariantSetResult invariant_set_branch(const std::vector<Polynomial>& g, const std::vector<PolyMap>& Fs,
                                        std::size_t max_iter) {
    return fixpoint(g, Fs, max_iter, nullptr);
}

InvariantSetResult invariant_set(const std::vector<Polynomial>& g, const PolyMap& F, std::size_t max_iter) {
    return invariant_set_branch(g, std::vector<PolyMap>{F}, max_iter);
}

GuardedSystem guarded_system(const Ctx& x_ctx, const std::vector<Polynomial>& hs, const std::vector<PolyMap>& Fs,
                             const std::vector<std::string>& extra_before_z) {
    std::vector<std::string> extra = extra_before_z;
    Ctx probe = extend(x_ctx, extra);
    extra.push_back(fresh_name(*probe, "z"));
    GuardedSystem G{extend(x_ctx, extra), {}, Polynomial(x_ctx)};
    std::size_t zi = G.ctx->size() - 1;
    G.z = Polynomial::variable(G.ctx, zi);
    Polynomial h = product(hs, G.ctx);
    for (const auto& F : Fs) {
        if (F.size() != x_ctx->size()) throw ArityError("map arity does not match the number of program variables");
        PolyMap M;
        for (const auto& f : F) M.push_back(f.lifted(G.ctx));
        for (std::size_t i = x_ctx->size(); i < zi; ++i) M.push_back(Polynomial::variable(G.ctx, i));
        M.push_back(G.z * h);
        G.maps.push_back(std::move(M));
    }
    return G;
}

namespace {

std::vector<Rational> with_z(const std::vector<Rational>& a, std::size_t ctx_size) {
    std::vector<Rational> p = a;
    p.resize(ctx_size, 0);
    p.back() = 1;
    return p;
}

// Breadth-first search over branch words for the first reachable state where g != 0.
void find_witness(const std::vector<Rational>& a, const Polynomial& g, const std::vector<Polynomial>& hs,
                  const std::vector<PolyMap>& Fs, std::size_t depth, CheckResult& out) {
    struct Node {
        std::vector<Rational> point;
        std::vector<std::size_t> word;
    };
    std::deque<Node> queue{{a, {}}};
    std::size_t visited = 0;
    while (!queue.empty() && visited < 4096) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        ++visited;
        Rational v = g.evaluate(cur.point);
        if (v != 0) {
            out.witness_word = cur.word;
            out.witness_value = v;
            return;
        }
        if (cur.word.size() == depth) continue;
        Rational hv = 1;
        for (const auto& h : hs) hv *= h.evaluate(cur.point);
        if (hv == 0) continue;
        for (std::size_t i = 0; i < Fs.size(); ++i) {
            Node nx{{}, cur.word};
            nx.word.push_back(i);
            for (const auto& f : Fs[i]) nx.point.push_back(f.evaluate(cur.point));
            queue.push_back(std::move(nx));
        }
    }
}

}  // namespace

CheckResult check_pi_branch(const std::vector<Rational>& a, const Polynomial& g, const std::vector<Polynomial>& hs,
                            const std::vector<PolyMap>& Fs, std::size_t max_iter) {
    const Ctx& x_ctx = g.ctx();
    if (a.size() != x_ctx->size()) throw ArityError("initial point has the wrong number of entries");
    CheckResult res;
    if (g.is_zero()) return res;
    GuardedSystem sys = guarded_system(x_ctx, hs, Fs);
    auto point = with_z(a, sys.ctx->size());
    // A polynomial of the chain that is nonzero at (a, 1) stays in the output, so the
    // verdict is already False and the chain need not be completed.
    auto R = fixpoint({sys.z * g.lifted(sys.ctx)}, sys.maps, max_iter,
                      [&](const std::vector<Polynomial>& block, const std::vector<std::vector<std::size_t>>&) {
                          for (const auto& p : block)
                              if (p.evaluate(point) != 0) return true;
                          return false;
                      });
    res.iterations = R.iterations;
    for (const auto& block : R.blocks)
        for (const auto& p : block) {
            Rational v = p.evaluate(point);
            if (v != 0) {
                res.holds = false;
                res.violated = p;
                res.violated_value = v;
                find_witness(a, g, hs, Fs, R.iterations + 1, res);
                return res;
            }
        }
    return res;
}

CheckResult check_pi(const std::vector<Rational>& a, const Polynomial& g, const std::vector<Polynomial>& hs,
                     const PolyMap& F, std::size_t max_iter) {
    return check_pi_branch(a, g, hs, std::vector<PolyMap>{F}, max_iter);
}

std::vector<bool> check_pi_batch(const std::vector<Rational>& a, const std::vector<Polynomial>& gs,
                                 const std::vector<Polynomial>& hs, const std::vector<PolyMap>& Fs,
                                 std::size_t max_iter, std::size_t* iterations) {
    if (iterations) *iterations = 0;
    std::vector<bool> result(gs.size(), true);
    if (gs.empty()) return result;
    const Ctx& x_ctx = gs[0].ctx();
    if (a.size() != x_ctx->size()) throw ArityError("initial point has the wrong number of entries");
    GuardedSystem sys = guarded_system(x_ctx, hs, Fs);
    auto point = with_z(a, sys.ctx->size());
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < gs.size(); ++i)
        if (!gs[i].is_zero()) pending.push_back(i);
    while (!pending.empty()) {
        std::vector<Polynomial> batch;
        for (std::size_t i : pending) batch.push_back(sys.z * gs[i].lifted(sys.ctx));
        // Stop at the first block with a polynomial nonzero at (a, 1): the candidates it
        // descends from are refuted, and the rest are retried as a smaller batch.
        std::vector<bool> refuted(pending.size(), false);
        bool any = false;
        auto R = fixpoint(batch, sys.maps, max_iter,
                          [&](const std::vector<Polynomial>& block, const std::vector<std::vector<std::size_t>>& origins) {
                              for (std::size_t k = 0; k < block.size(); ++k)
                                  if (block[k].evaluate(point) != 0)
                                      for (std::size_t o : origins[k]) {
                                          refuted[o] = true;
                                          any = true;
                                      }
                              return any;
                          });
        if (iterations) *iterations = R.iterations;
        if (!any) break;
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < pending.size(); ++k) {
            if (refuted[k])
                result[pending[k]] = false;
            else
                rest.push_back(pending[k]);
        }
        pending = std::move(rest);
    }
    return result;
}

}  // namespace polyinv
