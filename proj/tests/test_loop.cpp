#include "support.hpp"

#include <filesystem>

using namespace support;

TEST_SUITE("loop_lang") {

TEST_CASE("Squares file") {
    auto L = corpus_loop("squares");
    CHECK(L.n() == 3);
    CHECK(L.branches.size() == 1);
    CHECK(L.guards.empty());
    CHECK(L.concrete_init() == Q({-1, -1, 1}));
    CHECK(L.branches[0] == Ps({"2*x1 + x2^2 + x3", "2*x2 - x2^2 + 2*x3", "1 - x3"}, L.vars));
}

TEST_CASE("ps6 file has one guard") {
    auto L = corpus_loop("ps6");
    CHECK(L.n() == 2);
    REQUIRE(L.guards.size() == 1);
    CHECK(L.guards[0].kind == GuardKind::NonZero);
    CHECK(L.guards[0].poly == P("x2 - 18665", L.vars));
    CHECK(L.guards_of(GuardKind::NonZero).size() == 1);
    CHECK_FALSE(L.has_inequality_guards());
}

TEST_CASE("guard kinds and symbolic init") {
    auto L = parse_loop("vars x1\ninit symbolic\nguard x1 == 0\nguard x1 > 0\nguard x1 >= 0\nguard x1\nbranch:\nx1 <- x1\n");
    CHECK(L.symbolic());
    CHECK_THROWS_AS(L.concrete_init(), SymbolicInitRequiredConcrete);
    REQUIRE(L.guards.size() == 4);
    CHECK(L.guards[0].kind == GuardKind::Zero);
    CHECK(L.guards[1].kind == GuardKind::Positive);
    CHECK(L.guards[2].kind == GuardKind::NonNegative);
    CHECK(L.guards[3].kind == GuardKind::NonZero);
    CHECK(L.has_inequality_guards());
}

TEST_CASE("identity loop on one variable") {
    auto L = parse_loop("vars x1\ninit 5/2\nbranch:\n  x1 <- x1  # nothing happens\n");
    CHECK(L.branches[0] == Ps({"x1"}, L.vars));
    CHECK(L.concrete_init() == std::vector<Rational>{Rational(5, 2)});
}

TEST_CASE("multiple branches") {
    auto L = corpus_loop("markov");
    CHECK(L.branches.size() == 3);
    CHECK(L.branches[1][1] == P("3*x1*x3 - x2", L.vars));
}

TEST_CASE("malformed files report positions") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_loop(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("") == 1);
    CHECK(line_of("init 1\n") == 1);
    CHECK(line_of("vars x1 x2\ninit 1\nbranch:\nx1 <- x1\nx2 <- x2\n") == 2);
    CHECK(line_of("vars x1 x2\ninit 1 2\nbranch:\nx1 <- x1\n") == 3);
    CHECK(line_of("vars x1 x2\ninit 1 2\nbranch:\nx1 <- x1\nx1 <- x2\n") == 5);
    CHECK(line_of("vars x1\ninit 1\nbranch:\nx1 <- x1 +\n") == 4);
    CHECK(line_of("vars x1\ninit 1\nbranch:\nx1 <- y9\n") == 4);
    CHECK(line_of("vars x1\ninit 1\n") == 2);
    CHECK(line_of("vars z\ninit 1\nbranch:\nz <- z\n") == 1);
    CHECK(line_of("vars x1\n\n# comment\ninit 1\nwhile x1\n") == 5);
    try {
        parse_loop("vars x1\ninit 1\nbranch:\nx1 <- x1 + * 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.column() == 12);
    }
    CHECK_THROWS_AS(load_loop("/nonexistent/loop.loop"), Error);
}

TEST_CASE("reserved names") {
    CHECK(is_reserved_name("z"));
    CHECK(is_reserved_name("t"));
    CHECK(is_reserved_name("y12"));
    CHECK(is_reserved_name("a3"));
    CHECK_FALSE(is_reserved_name("x1"));
    CHECK_FALSE(is_reserved_name("ya"));
}

TEST_CASE("print then parse is a fixpoint on the corpus") {
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(POLYINV_CORPUS_DIR)) {
        if (entry.path().extension() != ".loop") continue;
        ++files;
        auto L = load_loop(entry.path().string());
        std::string once = print_loop(L);
        auto L2 = parse_loop(once);
        CHECK(print_loop(L2) == once);
        CHECK(L2.branches == L.branches);
        CHECK(L2.init == L.init);
        REQUIRE(L2.guards.size() == L.guards.size());
        for (std::size_t i = 0; i < L.guards.size(); ++i) {
            CHECK(L2.guards[i].poly == L.guards[i].poly);
            CHECK(L2.guards[i].kind == L.guards[i].kind);
        }
    }
    CHECK(files >= 10);
}

TEST_CASE("unrolling") {
    auto swap = parse_loop("vars x1 x2\ninit 1 2\nbranch:\nx1 <- x2\nx2 <- x1\n");
    auto T = unroll(swap, Q({1, 2}), {0, 0, 0, 0});
    CHECK(T.points == std::vector<std::vector<Rational>>{Q({1, 2}), Q({2, 1}), Q({1, 2}), Q({2, 1}), Q({1, 2})});
    CHECK_FALSE(T.exited);

    auto ps6 = corpus_loop("ps6");
    T = unroll(ps6, Q({0, 0}), {0, 0, 0});
    CHECK(T.points == std::vector<std::vector<Rational>>{Q({0, 0}), Q({0, 1}), Q({1, 2}), Q({33, 3})});
    CHECK(T.guard_values == Q({-18665, -18664, -18663, -18662}));

    // One step of Squares, by direct evaluation of the update polynomials.
    auto sq = corpus_loop("squares");
    T = unroll(sq, Q({-1, -1, 1}), {0});
    CHECK(T.points.back() == Q({0, -1, 0}));

    CHECK_THROWS_AS(unroll(swap, Q({1, 2}), {1}), Error);
    CHECK_THROWS_AS(unroll(swap, Q({1}), {0}), ArityError);
}

TEST_CASE("unrolling stops where a guard vanishes") {
    auto L = parse_loop("vars x1\ninit 0\nguard x1 - 2\nbranch:\nx1 <- x1 + 1\n");
    auto T = unroll(L, Q({0}), {0, 0, 0, 0, 0});
    CHECK(T.exited);
    CHECK(T.points.size() == 3);
    CHECK(T.points.back() == Q({2}));
}

}  // TEST_SUITE
