#include <catch_amalgamated.hpp>

#include <random>

#include "omsig/symplectic.hpp"

using namespace omsig;

TEST_CASE("genus one anchors") {
    const WordContext ctx = WordContext::surface(1);
    CHECK(word_to_sp(parse_word("c2^2", ctx)) == RationalMatrix{{1, 2}, {0, 1}});
    CHECK(word_to_sp(parse_word("dp1^2", ctx)) == RationalMatrix{{1, 0}, {-2, 1}});
    // c1 c2 c1 has order 4 in SL(2, Z)
    const RationalMatrix S = word_to_sp(parse_word("c1 c2 c1", ctx));
    CHECK(power(S, 2) == -RationalMatrix::identity(2));
    // (c1 c2)^6 = 1
    CHECK(is_identity(word_to_sp(parse_word("(c1 c2)^6", ctx))));
}

TEST_CASE("chain intersections") {
    for (int g = 1; g <= 5; ++g) {
        for (int i = 1; i <= 2 * g + 1; ++i)
            for (int k = 1; k <= 2 * g + 1; ++k) {
                const long x = algebraic_intersection(standard_curve_class(curve(i), g), standard_curve_class(curve(k), g));
                if (std::abs(i - k) == 1) CHECK(std::abs(x) == 1);
                else CHECK(x == 0);
            }
        // c_{2g+2} meets c_1 once, misses c_2..c_{2g}
        const CurveClass top = standard_curve_class(curve(2 * g + 2), g);
        for (int i = 2; i <= 2 * g; ++i) CHECK(algebraic_intersection(top, standard_curve_class(curve(i), g)) == 0);
    }
}

TEST_CASE("transvection formula") {
    // t_c^k(x) = x + k (c.x) c
    for (int g = 1; g <= 3; ++g)
        for (int i = 1; i <= 2 * g + 2; ++i) {
            const CurveClass c = standard_curve_class(curve(i), g);
            for (long k : {-2L, 1L, 3L}) {
                const RationalMatrix M = transvection(c, k);
                CHECK(is_symplectic(M));
                for (int b = 0; b < 2 * g; ++b) {
                    CurveClass e{g, std::vector<long>(2 * g, 0), false, "e"};
                    e.homology[b] = 1;
                    const long cx = algebraic_intersection(c, e);
                    for (int r = 0; r < 2 * g; ++r)
                        CHECK(M(r, b) == Rational((r == b ? 1 : 0) + k * cx * c.homology[r]));
                }
            }
        }
    CHECK(is_identity(generator_matrix(separating(1), 2)));
}

TEST_CASE("relations hold on homology") {
    for (int g = 1; g <= 4; ++g) {
        const RelationReport r = check_relations(g);
        INFO("g=" << g << " failures: " << r.failures().size());
        CHECK(r.all_hold());
        if (g >= 2) CHECK_FALSE(r.descending_chain_form_holds);
    }
}

TEST_CASE("random words land in Sp(2g, Z)") {
    std::mt19937_64 rng(9);
    for (int g = 1; g <= 4; ++g) {
        std::uniform_int_distribution<int> pick(1, 2 * g + 2), e(-3, 3), len(1, 10);
        for (int t = 0; t < 25; ++t) {
            Word w(WordContext::surface(g));
            for (int k = len(rng); k > 0; --k) w.push({curve(pick(rng)), e(rng)});
            const RationalMatrix M = word_to_sp(w);
            CHECK(is_symplectic(M));
            CHECK(det(M) == 1);
            CHECK(is_identity(M * word_to_sp(w.inverse())));
        }
    }
}
