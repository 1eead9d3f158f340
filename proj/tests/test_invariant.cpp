#include "properties.hpp"
#include "support.hpp"

#include "polyinv/generate.hpp"
#include "polyinv/groebner.hpp"
#include "polyinv/invariant_set.hpp"

using namespace support;

namespace {

const char* kG = "x1^2 - x1*x2 + 9*x1^3 - 24*x1^2*x2 + 16*x1*x2^2";
const char* kGF = "360*x1^3 - 1248*x1^2*x2 + 40*x1^2 + 1408*x1*x2^2 - 72*x1*x2 - 512*x2^3 + 32*x2^2";

// Chain minimality and closure of the output.
void check_chain(const InvariantSetResult& R, const std::vector<PolyMap>& Fs) {
    std::vector<Polynomial> before;
    for (std::size_t j = 0; j < R.blocks.size(); ++j) {
        if (j > 0) CHECK_FALSE(in_radical(R.blocks[j], before));
        before.insert(before.end(), R.blocks[j].begin(), R.blocks[j].end());
    }
    auto all = R.polynomials();
    for (const auto& F : Fs) CHECK(in_radical(compose(all, F), all));
}

}  // namespace

TEST_SUITE("invariant_core") {

TEST_CASE("example1 invariant set") {
    auto ctx = make_context(2);
    Polynomial g = P(kG, ctx);
    PolyMap F = Ps({"10*x1 - 8*x2", "6*x1 - 4*x2"}, ctx);
    auto R = invariant_set({g}, F);
    CHECK(R.iterations == 1);
    REQUIRE(R.blocks.size() == 2);
    CHECK(R.blocks[0] == std::vector<Polynomial>{g});
    CHECK(R.blocks[1] == std::vector<Polynomial>{P(kGF, ctx)});
    check_chain(R, {F});
}

TEST_CASE("example1 check") {
    auto ctx = make_context(2);
    PolyMap F = Ps({"10*x1 - 8*x2", "6*x1 - 4*x2"}, ctx);
    auto r = check_pi(Q({0, 1}), P(kG, ctx), {}, F);
    CHECK_FALSE(r.holds);
    REQUIRE(r.violated.has_value());
    CHECK(r.violated_value == -480);
    REQUIRE(r.witness_word.has_value());
    CHECK(*r.witness_word == std::vector<std::size_t>{0});
    CHECK(r.witness_value == -480);
}

TEST_CASE("trivial fixpoints") {
    auto ctx = make_context(2);
    Polynomial g = P(kG, ctx);
    auto R = invariant_set({g}, identity_map(ctx, 2));
    CHECK(R.iterations == 0);
    CHECK(R.polynomials() == std::vector<Polynomial>{g});

    auto c1 = make_context(1);
    R = invariant_set({P("x1", c1)}, Ps({"x1^2"}, c1));
    CHECK(R.iterations == 0);
    CHECK(R.polynomials() == Ps({"x1"}, c1));
}

TEST_CASE("iteration limit carries the partial chain") {
    auto c1 = make_context(1);
    try {
        // Each round removes one root of g: the chain has six steps.
        invariant_set({P("x1*(x1 - 1)*(x1 - 2)*(x1 - 3)*(x1 - 4)*(x1 - 5)", c1)}, Ps({"x1 + 1"}, c1), 3);
        FAIL("expected IterationLimitExceeded");
    } catch (const IterationLimitExceeded& e) {
        CHECK(e.limit() == 3);
        CHECK(e.partial_chain().size() >= 3);
        CHECK(parse_poly(e.partial_chain()[0], c1) == P("x1*(x1 - 1)*(x1 - 2)*(x1 - 3)*(x1 - 4)*(x1 - 5)", c1));
    }
}

TEST_CASE("branching fixpoint") {
    auto ctx = make_context(2);
    Polynomial g = P(kG, ctx);
    PolyMap F = Ps({"10*x1 - 8*x2", "6*x1 - 4*x2"}, ctx);
    auto single = invariant_set({g}, F);
    auto one = invariant_set_branch({g}, {F});
    CHECK(one.polynomials() == single.polynomials());
    CHECK(one.iterations == single.iterations);
    auto twice = invariant_set_branch({g}, {F, F});
    CHECK(twice.polynomials() == single.polynomials());

    PolyMap swap = Ps({"x2", "x1"}, ctx);
    auto R = invariant_set_branch({P("x1 - x2", ctx)}, {swap, identity_map(ctx, 2)});
    CHECK(R.iterations == 0);
    CHECK(R.polynomials() == Ps({"x1 - x2"}, ctx));
    check_chain(R, {swap, identity_map(ctx, 2)});
}

TEST_CASE("check on zero, identity and the ps6 invariant") {
    auto ctx = make_context(2);
    PolyMap F = Ps({"10*x1 - 8*x2", "6*x1 - 4*x2"}, ctx);
    CHECK(check_pi(Q({3, 7}), P("0", ctx), {}, F).holds);
    auto L = corpus_loop("ps6");
    Polynomial inv = P("x1 - (x2^6/6 - x2^5/2 + 5*x2^4/12 - x2^2/12)", L.vars);
    auto r = check_pi(L.concrete_init(), inv, L.guards_of(GuardKind::NonZero), L.branches[0]);
    CHECK(r.holds);
    CHECK_FALSE(check_pi(L.concrete_init(), inv + P("1", L.vars), L.guards_of(GuardKind::NonZero), L.branches[0]).holds);
}

TEST_CASE("guards cut the trajectory") {
    // x1 counts 0, 1, 2 and stops at 2: (x1)(x1-1)(x1-2) holds, x1(x1-1) does not.
    auto c1 = make_context(1);
    PolyMap F = Ps({"x1 + 1"}, c1);
    auto hs = Ps({"x1 - 2"}, c1);
    CHECK(check_pi(Q({0}), P("x1*(x1 - 1)*(x1 - 2)", c1), hs, F).holds);
    auto r = check_pi(Q({0}), P("x1*(x1 - 1)", c1), hs, F);
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness_word.has_value());
    CHECK(r.witness_word->size() == 2);
    CHECK(r.witness_value == 2);
}

TEST_CASE("branching checks") {
    auto ctx = make_context(2);
    PolyMap swap = Ps({"x2", "x1"}, ctx);
    CHECK(check_pi_branch(Q({1, 1}), P("x1 - x2", ctx), {}, {swap, identity_map(ctx, 2)}).holds);
    auto c1 = make_context(1);
    auto r = check_pi_branch(Q({0}), P("x1", c1), {}, {Ps({"x1 + 1"}, c1), Ps({"x1"}, c1)});
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness_word.has_value());
    CHECK(*r.witness_word == std::vector<std::size_t>{0});
}

TEST_CASE("single-branch checks agree with the plain check") {
    Rng rng(41);
    int compared = 0;
    for (std::size_t k = 0; compared < 20; ++k) {
        // Affine and permutation shapes keep the chains short for arbitrary candidates.
        LoopProgram L = random_loop(rng, k % 2 == 0 ? 0 : 4);
        auto gs = monomial_polys(L.vars, L.n(), 2);
        auto R = truncated_ideal(L.concrete_init(), gs, {}, L.branches[0]);
        std::vector<Polynomial> cands = R.basis;
        cands.push_back(random_poly(rng, L.vars, L.n(), 2, 3));
        if (!R.basis.empty()) cands.push_back(R.basis[0] + P("1", L.vars));
        for (const auto& g : cands) {
            auto a = check_pi(L.concrete_init(), g, {}, L.branches[0]);
            auto b = check_pi_branch(L.concrete_init(), g, {}, L.branches);
            CHECK(a.holds == b.holds);
            CHECK(a.iterations == b.iterations);
            ++compared;
        }
    }
}

TEST_CASE("check verdicts agree with unrolling") {
    // Single candidates on quadratic maps can need long chains of high degree; the affine and
    // permutation shapes keep every check cheap.
    Rng rng(42);
    for (std::size_t k = 0; k < 24; ++k) {
        LoopProgram L = random_loop(rng, k % 2 == 0 ? 0 : 4);
        auto gs = monomial_polys(L.vars, L.n(), 2);
        auto R = truncated_ideal(L.concrete_init(), gs, {}, L.branches[0]);
        std::vector<Polynomial> cands = R.basis;
        for (const auto& b : R.basis) cands.push_back(b + P("x1", L.vars));
        for (const auto& g : cands) {
            CheckResult r;
            try {
                r = check_pi(L.concrete_init(), g, {}, L.branches[0], 20);
            } catch (const IterationLimitExceeded&) {
                continue;
            }
            if (r.holds) {
                auto rep = vanish_along_trajectories(L, L.concrete_init(), {g}, 1, std::max<std::size_t>(20, 2 * r.iterations), k);
                CHECK(rep.ok);
            } else {
                REQUIRE(r.witness_word.has_value());
                auto T = unroll(L, L.concrete_init(), *r.witness_word);
                CHECK(g.evaluate(T.points.back()) == r.witness_value);
                CHECK(r.witness_value != 0);
                for (std::size_t i = 0; i + 1 < T.points.size(); ++i) CHECK(g.evaluate(T.points[i]) == 0);
            }
        }
    }
}

TEST_CASE("batch check") {
    auto L = corpus_loop("squares");
    // The fifth polynomial has constant -2; with +2 it is 4 at the start point.
    auto cands = Ps({"1 + x1 + x2 + x3", "1 + x1 + x2 + x3^2", "2 + 3*(x1 + x2) + (x1 + x2)^2",
                     "x1^2 - x2^2 + 2*x1*x3 - x1 - 3*x2 - 2", "x2^2 - x1^2 + 2*x2*x3 - x2 - 3*x1 - 2"},
                    L.vars);
    std::size_t iters = 0;
    auto res = check_pi_batch(L.concrete_init(), cands, {}, L.branches, kDefaultMaxIter, &iters);
    CHECK(res == std::vector<bool>(5, true));
    CHECK(check_pi_batch(L.concrete_init(), {}, {}, L.branches).empty());

    Polynomial plus_two = P("x2^2 - x1^2 + 2*x2*x3 - x2 - 3*x1 + 2", L.vars);
    CHECK(plus_two.evaluate(L.concrete_init()) == 4);
    auto r = check_pi(L.concrete_init(), plus_two, {}, L.branches[0]);
    CHECK_FALSE(r.holds);
    CHECK(r.witness_word == std::vector<std::size_t>{});
}

TEST_CASE("batch equals elementwise checks") {
    auto L = corpus_loop("example1");
    auto gs = monomial_polys(L.vars, L.n(), 3);
    auto R = truncated_ideal(L.concrete_init(), gs, {}, L.branches[0]);
    REQUIRE(!R.basis.empty());
    Rng rng(43);
    for (int k = 0; k < 10; ++k) {
        std::vector<Polynomial> mixed;
        for (int i = 0; i < 4; ++i) {
            Polynomial c = R.basis[rng.index(R.basis.size())] * Rational(rng.uniform(1, 3));
            if (rng.uniform(0, 1)) c += random_poly(rng, L.vars, 2, 2, 2);
            mixed.push_back(c);
        }
        auto batch = check_pi_batch(L.concrete_init(), mixed, {}, L.branches);
        for (std::size_t i = 0; i < mixed.size(); ++i)
            CHECK(batch[i] == check_pi_branch(L.concrete_init(), mixed[i], {}, L.branches).holds);
    }
}

TEST_CASE("guarded system layout") {
    auto ctx = make_context(2);
    auto sys = guarded_system(ctx, Ps({"x1 - 1", "x2"}, ctx), {Ps({"x2", "x1"}, ctx)});
    CHECK(sys.ctx->names() == std::vector<std::string>{"x1", "x2", "z"});
    REQUIRE(sys.maps.size() == 1);
    CHECK(sys.maps[0][2] == P("z*(x1 - 1)*x2", sys.ctx));
}

}  // TEST_SUITE
