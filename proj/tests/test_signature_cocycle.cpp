#include <catch_amalgamated.hpp>

#include "omsig/closed_forms.hpp"
#include "omsig/defect.hpp"

using namespace omsig;

namespace {

Word rw(const WordContext& ctx, std::uint64_t seed, std::size_t i, int len = 6) {
    auto rng = sample_rng(seed, i);
    return random_word(ctx, rng, len);
}

}  // namespace

TEST_CASE("spec examples") {
    const CocycleEvaluator<MeyerRep> m1{MeyerRep(1)};
    const WordContext s1 = WordContext::surface(1);
    CHECK(m1.tau(parse_word("c2^2", s1), parse_word("dp1^2", s1)).tau == 0);
    CHECK(m1.tau(parse_word("", s1), parse_word("c1", s1)).tau == 0);
    const CocycleEvaluator<OmegaRep> o{OmegaRep(6, 6, 2)};
    CHECK(o.tau(parse_word("s1", o.rep().context()), parse_word("s1", o.rep().context())).tau == 1);
}

TEST_CASE("genus one Meyer values against a hand computation") {
    // A = [[1,1],[0,1]]: [A^-1 - 1 | A - 1] has rank 1, so dim V = 3; -J(A - A^-1) = diag(0, 2).
    const RationalMatrix A{{1, 1}, {0, 1}};
    const RationalMatrix B{{1, 0}, {-1, 1}};
    CHECK(form_tau(symplectic_form(1), A, A).dim == 3);
    CHECK(meyer_tau(A, A) == 1);
    CHECK(meyer_tau(inverse(A), inverse(A)) == -1);
    CHECK(meyer_tau(A, B) == meyer_tau(B, A));
    CHECK(meyer_tau(RationalMatrix::identity(2), A) == 0);
}

TEST_CASE("Barge-Ghys formula for tau(A^k, A)") {
    for (int g = 1; g <= 3; ++g) {
        const WordContext ctx = WordContext::surface(g);
        for (std::size_t i = 0; i < 15; ++i) {
            const RationalMatrix A = word_to_sp(rw(ctx, 100 + g, i));
            RationalMatrix P = A;
            for (long k = 1; k <= 8; ++k) {
                CHECK(meyer_tau(P, A) == tau_power_bg(A, k));
                P = P * A;
            }
        }
    }
    // the same formula with the Gram matrix on an eigenspace
    const OmegaRep rep(6, 6, 2);
    for (std::size_t i = 0; i < 10; ++i) {
        const CyclotomicMatrix A = rep.image(rw(rep.context(), 7, i));
        PowerCocycleSequence<Cyclotomic> seq(rep.form, A);
        CyclotomicMatrix P = A;
        for (long k = 1; k <= 6; ++k) {
            CHECK(seq.next() == form_tau(rep.form, P, A).tau);
            P = rep.normalize(P * A);
        }
    }
}

TEST_CASE("sign-of-sines formula for tau(s^k, s)") {
    for (int m = 4; m <= 7; ++m)
        for (int j = 1; j < m; ++j) {
            const EigenspaceRep rep = eigenspace_rep(m, m, j);
            for (int r = 2; r <= m; ++r) {
                Word w(rep.context());
                for (int a = 1; a < r; ++a) w.push({sigma(a), 1});
                const CyclotomicMatrix s = rep.image(w);
                CyclotomicMatrix p = s;
                for (long k = 1; k <= 2L * r; ++k) {
                    INFO("m=" << m << " j=" << j << " r=" << r << " k=" << k);
                    CHECK(hermitian_tau(rep, p, s) == tau_power_closed_form(m, j, r, k));
                    p = normalize_level(p * s, rep.level);
                }
            }
        }
}

TEST_CASE("cocycle identity, normalization and conjugation invariance") {
    const MeyerRep meyer(2);
    const OmegaRep omega(5, 5, 2);
    const CocycleEvaluator<MeyerRep> em(meyer);
    const CocycleEvaluator<OmegaRep> eo(omega);
    for (std::size_t i = 0; i < 40; ++i) {
        const Word a = rw(meyer.context(), 1, 3 * i), b = rw(meyer.context(), 1, 3 * i + 1), c = rw(meyer.context(), 1, 3 * i + 2);
        CHECK(cocycle_identity_check(em, a, b, c));
        CHECK(em.tau(a, a.inverse()).tau == 0);
        CHECK(em.tau(a, b).tau == em.tau(c * a * c.inverse(), c * b * c.inverse()).tau);
        const Word x = rw(omega.context(), 2, 3 * i), y = rw(omega.context(), 2, 3 * i + 1), z = rw(omega.context(), 2, 3 * i + 2);
        CHECK(cocycle_identity_check(eo, x, y, z));
        CHECK(eo.tau(x, x.inverse()).tau == 0);
        CHECK(eo.tau(Word(omega.context()), x).tau == 0);
        CHECK(eo.tau(x, y).tau == eo.tau(z * x * z.inverse(), z * y * z.inverse()).tau);
    }
    CHECK(eo.cache_size() > 0);
}

TEST_CASE("tau_j and tau_{d-j} agree") {
    for (int m : {5, 6}) {
        const OmegaRep a(m, m, 1), b(m, m, m - 1);
        for (std::size_t i = 0; i < 20; ++i) {
            const Word x = rw(a.context(), 3, 2 * i), y = rw(a.context(), 3, 2 * i + 1);
            CHECK(form_tau(a.form, a.image(x), a.image(y)).tau == form_tau(b.form, b.image(x), b.image(y)).tau);
        }
    }
}

TEST_CASE("d = 2 eigenspace against the Meyer cocycle") {
    for (int m : {4, 6}) {
        const BridgeReport r = meyer_bridge(m, 40, 17, 6, 1);
        CHECK(r.agree == r.samples);
    }
    CHECK_THROWS_AS(meyer_bridge(5, 1, 1), invalid_input);
}

TEST_CASE("bounded by the rank") {
    const OmegaRep rep(7, 7, 3);
    for (std::size_t i = 0; i < 30; ++i) {
        const CocycleValue v = form_tau(rep.form, rep.image(rw(rep.context(), 5, 2 * i)), rep.image(rw(rep.context(), 5, 2 * i + 1)));
        CHECK(std::abs(v.tau) <= 7 - 2);
        CHECK(v.dim <= 2 * 5u);
    }
}

TEST_CASE("hermitian_tau rejects foreign matrices") {
    const EigenspaceRep rep = eigenspace_rep(4, 4, 1);
    CyclotomicMatrix bad = rep.identity();
    bad(0, 0) = Cyclotomic::rational(4, 2);
    CHECK_THROWS_AS(hermitian_tau(rep, bad, rep.identity()), invalid_input);
    CHECK_THROWS_AS(meyer_tau(RationalMatrix::identity(3), RationalMatrix::identity(3)), invalid_input);
}

TEST_CASE("g-signature at k = 0 sums the eigenspace signatures") {
    const int m = 4;
    const WordContext ctx = WordContext::sphere(m);
    const Word x = parse_word("s1 s2^2", ctx), y = parse_word("s3 s1^-1", ctx);
    int total = 0;
    for (int j = 1; j < m; ++j) {
        const EigenspaceRep rep = eigenspace_rep(m, m, j);
        total += form_tau(rep.gram, rep.image(x), rep.image(y)).tau;
    }
    CHECK(g_signature(m, m, 0, x, y) == Cyclotomic::rational(m, total));
}
