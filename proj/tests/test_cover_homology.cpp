#include <catch_amalgamated.hpp>

#include "omsig/cover.hpp"
#include "omsig/matrix.hpp"

using namespace omsig;

namespace {

std::vector<std::tuple<int, int, int>> small_mdj() {
    std::vector<std::tuple<int, int, int>> out;
    for (int m = 3; m <= 8; ++m)
        for (int d = 2; d <= m; ++d)
            if (m % d == 0)
                for (int j = 1; j < d; ++j) out.emplace_back(m, d, j);
    return out;
}

}  // namespace

TEST_CASE("genus by Riemann-Hurwitz") {
    for (int m = 3; m <= 12; ++m)
        for (int d = 2; d <= m; ++d)
            if (m % d == 0) CHECK(CoverBasis(m, d).genus() * 2 == (d - 1) * (m - 2));
}

TEST_CASE("intersection form is unimodular and skew") {
    for (int m = 3; m <= 8; ++m)
        for (int d = 2; d <= m; ++d) {
            if (m % d) continue;
            const RationalMatrix Q = intersection_matrix(m, d);
            CHECK(transpose(Q) == -Q);
            CHECK(abs(det(Q)) == 1);
        }
}

TEST_CASE("half twists and deck map preserve the intersection form and satisfy the braid relations") {
    for (int m = 3; m <= 7; ++m)
        for (int d = 2; d <= m; ++d) {
            if (m % d) continue;
            const RationalMatrix Q = intersection_matrix(m, d);
            const RationalMatrix T = deck_action(m, d);
            CHECK(transpose(T) * Q * T == Q);
            CHECK(is_identity(power(T, d)));
            std::vector<RationalMatrix> S;
            for (int i = 1; i <= m - 1; ++i) S.push_back(halftwist_action(m, d, i));
            for (int i = 0; i < m - 1; ++i) {
                INFO("m=" << m << " d=" << d << " i=" << i + 1);
                CHECK(transpose(S[i]) * Q * S[i] == Q);
                CHECK(S[i] * T == T * S[i]);
                if (i + 1 < m - 1) CHECK(S[i] * S[i + 1] * S[i] == S[i + 1] * S[i] * S[i + 1]);
                for (int k = i + 2; k < m - 1; ++k) CHECK(S[i] * S[k] == S[k] * S[i]);
            }
        }
}

TEST_CASE("Gram matrix: table and closed form agree, skew-hermitian") {
    for (auto [m, d, j] : small_mdj()) {
        INFO("m=" << m << " d=" << d << " j=" << j);
        const CyclotomicMatrix G = gram_from_table(m, d, j);
        CHECK(G == gram_closed_form(m, d, j));
        CHECK(adjoint(G) == -G);
    }
}

TEST_CASE("eigenspace generators") {
    for (auto [m, d, j] : small_mdj()) {
        INFO("m=" << m << " d=" << d << " j=" << j);
        const EigenspaceRep rep = eigenspace_rep(m, d, j);
        CHECK(rep.dim() == m - 2);
        // deck map acts by lambda
        const CyclotomicMatrix T = normalize_level(project_to_eigenspace(deck_action(m, d), m, d, j), d);
        CHECK(T == rep.deck_matrix());
        for (int i = 1; i <= m - 1; ++i) {
            const CyclotomicMatrix& M = rep.generators[i - 1];
            CHECK(adjoint(M) * rep.gram * M == rep.gram);
            CHECK(is_identity(M * rep.inverses[i - 1]));
            CHECK(M == halftwist_closed_form(m, d, j, i));
        }
        for (const auto& r : relation_catalog(rep.context())) {
            INFO(r.name);
            CHECK(rep.image(r.lhs) == rep.image(r.rhs));
        }
    }
}

TEST_CASE("sphere lift is the deck scalar lambda^{-1}") {
    for (auto [m, d, j] : small_mdj()) {
        const EigenspaceRep rep = eigenspace_rep(m, d, j);
        const CyclotomicMatrix L = rep.image(macro_expand("sphere_lift", rep.context()));
        Cyclotomic lam;
        REQUIRE(is_scalar_matrix(L, &lam));
        CHECK(lam == Cyclotomic::root_of_unity(d, -j));
    }
}

TEST_CASE("eigenvectors of s_1..s_{r-1}") {
    for (int m = 4; m <= 7; ++m)
        for (int j = 1; j < m; ++j)
            for (int r = 2; r <= m; ++r) {
                const EigenspaceRep rep = eigenspace_rep(m, m, j);
                Word w(rep.context());
                for (int a = 1; a < r; ++a) w.push({sigma(a), 1});
                const CyclotomicMatrix S = rep.image(w);
                for (const auto& e : eigenvectors_v(m, j, r)) {
                    INFO("m=" << m << " j=" << j << " r=" << r << " i=" << e.i);
                    std::vector<Cyclotomic> lv;
                    for (const auto& x : e.vector) lv.push_back(x * e.eigenvalue);
                    CHECK(apply_matrix(S, e.vector) == lv);
                    CHECK(e.self_intersection == e.closed_form);
                }
            }
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(CoverBasis(6, 4), invalid_input);
    CHECK_THROWS_AS(eigenspace_rep(6, 3, 3), invalid_input);
    CHECK_THROWS_AS(halftwist_action(5, 5, 5), invalid_input);
    const EigenspaceRep rep = eigenspace_rep(4, 4, 1);
    CHECK_THROWS_AS(rep.image(parse_word("s1", WordContext::sphere(5))), invalid_input);
}
