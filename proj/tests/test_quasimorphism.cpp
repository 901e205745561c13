#include <catch_amalgamated.hpp>

#include <random>

#include "omsig/closed_forms.hpp"
#include "omsig/defect.hpp"

using namespace omsig;

namespace {

Word rw(const WordContext& ctx, std::uint64_t seed, std::size_t i, int len = 6) {
    auto rng = sample_rng(seed, i);
    return random_word(ctx, rng, len);
}

Word sigma_chain(const WordContext& ctx, int r) {
    Word w(ctx);
    for (int a = 1; a < r; ++a) w.push({sigma(a), 1});
    return w;
}

Word curve_chain(const WordContext& ctx, int n) {
    Word w(ctx);
    for (int a = 1; a <= n; ++a) w.push({curve(a), 1});
    return w;
}

}  // namespace

TEST_CASE("generator values") {
    for (int m = 4; m <= 7; ++m)
        for (int j = 1; j < m; ++j) {
            INFO("m=" << m << " j=" << j);
            CHECK(bootstrap_generator(m, j) == make_rational(2L * j * (m - j), static_cast<long>(m) * (m - 1)));
        }
    for (int g = 1; g <= 4; ++g) CHECK(MeyerQm(MeyerRep(g)).generator_value() == make_rational(g + 1, 2 * g + 1));
}

TEST_CASE("telescoping agrees with the torsion formula on other finite-order words") {
    // s_1..s_{m-1} and c_1..c_{2g+1} have finite order; their phi can be read off the torsion average
    for (int m = 4; m <= 7; ++m)
        for (int j = 1; j < m; ++j) {
            const OmegaQm q(OmegaRep(m, m, j));
            const Word w = sigma_chain(q.context(), m);
            CHECK(q.phi(w) == phi_torsion(q.evaluator(), q.rep().image(w)));
        }
    for (int g = 1; g <= 3; ++g) {
        const MeyerQm q{MeyerRep(g)};
        const Word w = curve_chain(q.context(), 2 * g + 1);
        CHECK(q.phi(w) == phi_torsion(q.evaluator(), q.rep().image(w)));
        CHECK(q.phi(w.pow(2 * g + 2)) == 0);
    }
    const MeyerQm q1{MeyerRep(1)};
    CHECK(q1.phi(parse_word("(c1 c2)^6", q1.context())) == 0);
}

TEST_CASE("delta phi is tau and phi is a class function") {
    const OmegaQm q(OmegaRep(6, 6, 2));
    const MeyerQm mq{MeyerRep(2)};
    for (std::size_t i = 0; i < 40; ++i) {
        const Word x = rw(q.context(), 11, 3 * i), y = rw(q.context(), 11, 3 * i + 1), z = rw(q.context(), 11, 3 * i + 2);
        CHECK(q.delta_phi(x, y) == q.tau(x, y).tau);
        CHECK(q.phi(z * x * z.inverse()) == q.phi(x));
        CHECK(q.phi(x.inverse()) == -q.phi(x));
        const Word a = rw(mq.context(), 12, 2 * i), b = rw(mq.context(), 12, 2 * i + 1);
        CHECK(mq.delta_phi(a, b) == mq.tau(a, b).tau);
        CHECK(mq.phi(b * a * b.inverse()) == mq.phi(a));
    }
}

TEST_CASE("homogenization on the chain words matches the closed form below r = m") {
    for (int m = 4; m <= 6; ++m)
        for (int j = 1; j < m; ++j) {
            const OmegaQm q(OmegaRep(m, m, j));
            for (int r = 2; r < m; ++r) {
                const QmValue v = q.homogenize(sigma_chain(q.context(), r));
                INFO("m=" << m << " j=" << j << " r=" << r << " " << v.mode_string());
                REQUIRE(v.certified());
                CHECK(v.value == closed_form_barphi(m, j, r));
                CHECK(q.phi(sigma_chain(q.context(), r)) == closed_form_phi(m, j, r));
            }
            // r = m: finite order, so barphi vanishes and phi is 2j(m-j)/m - 1
            const Word top = sigma_chain(q.context(), m);
            CHECK(q.homogenize(top).value == 0);
            CHECK(q.phi(top) == make_rational(2L * j * (m - j), m) - 1);
        }
}

TEST_CASE("homogeneous and conjugation invariant") {
    const OmegaQm q(OmegaRep(5, 5, 2), LimitOptions{32, 256});
    std::size_t checked = 0;
    for (std::size_t i = 0; i < 30 && checked < 10; ++i) {
        const Word x = rw(q.context(), 21, 2 * i, 4), z = rw(q.context(), 21, 2 * i + 1, 4);
        const QmValue a = q.homogenize(x), b = q.homogenize(x.pow(3)), c = q.homogenize(z * x * z.inverse());
        if (!a.certified() || !b.certified() || !c.certified()) continue;
        ++checked;
        CHECK(b.value == 3 * a.value);
        CHECK(c.value == a.value);
        CHECK(q.homogenize(x.inverse()).value == -a.value);
    }
    CHECK(checked >= 5);
}

TEST_CASE("torsion and central elements") {
    const OmegaQm q(OmegaRep(6, 6, 1));
    CHECK(q.homogenize(parse_word("t", q.context())).value == 0);
    CHECK(q.homogenize(macro_expand("sphere_lift", q.context())).value == 0);
    CHECK(q.phi(Word(q.context())) == 0);
    for (int g = 1; g <= 3; ++g) {
        const MeyerQm mq{MeyerRep(g)};
        const QmValue v = mq.homogenize(macro_expand("iota", mq.context()));
        CHECK(v.value == 0);
        CHECK(v.mode == QmMode::Exact);
    }
}

TEST_CASE("Meyer homogenized twist values") {
    for (int g = 1; g <= 3; ++g) {
        const MeyerQm q{MeyerRep(g)};
        CHECK(q.homogenize(parse_word("c1", q.context())).value == -make_rational(g, 2 * g + 1));
        for (int h = 1; h < g; ++h)
            CHECK(q.homogenize(parse_word("sep" + std::to_string(h), q.context())).value ==
                  -make_rational(4L * h * (g - h), 2 * g + 1));
    }
}

TEST_CASE("limit modes") {
    const OmegaQm q(OmegaRep(6, 6, 2));
    // unipotent image
    const LimitResult u = q.limit(parse_word("(s1 s2)^6", q.context()));
    CHECK(u.mode == QmMode::Exact);
    CHECK(u.sequence.empty());
    // (s1 s2)^3 is a twist, so s1 s2 settles through period detection
    const LimitResult f = q.limit(parse_word("s1 s2", q.context()));
    CHECK(f.mode == QmMode::Period);
    CHECK(q.homogenize(parse_word("s1 s2", q.context())).value == Rational(-4, 15));

    // something that does not settle inside a 32 window
    const OmegaQm small(OmegaRep(6, 6, 2), LimitOptions{32, 32});
    bool found = false;
    for (std::size_t i = 0; i < 300 && !found; ++i) {
        const QmValue v = small.homogenize(rw(small.context(), 5, i, 8));
        if (v.mode == QmMode::Unconverged) {
            found = true;
            CHECK_FALSE(v.certified());
            CHECK(v.mode_string() == "unconverged");
        }
    }
    CHECK(found);
}

TEST_CASE("period detection") {
    std::vector<int> s;
    for (int k = 1; k <= 64; ++k) s.push_back(k <= 3 ? 7 : (k % 3 == 0 ? 2 : -1));
    const auto p = detail::detect_period(s, 64);
    REQUIRE(p);
    CHECK(p->second == 3);
    CHECK(p->first == 4);
    std::mt19937 rng(1);
    std::vector<int> noise;
    for (int k = 1; k <= 64; ++k) noise.push_back(static_cast<int>(rng() % 3) - 1);
    CHECK_FALSE(detail::detect_period(noise, 64));
    CHECK(QmValue{0, QmMode::Period, 1, 3, ""}.mode_string() == "period(1,3)");
}

TEST_CASE("surface words") {
    const WordContext g3 = WordContext::surface(3);
    const MeyerQm q{MeyerRep(3)};
    CHECK_THROWS_AS(q.phi(parse_word("dp2", g3)), invalid_input);
    CHECK_NOTHROW(q.phi(parse_word("dp2 dm2", g3)));
    CHECK(q.phi(parse_word("dp1", g3)) == q.phi(parse_word("c1", g3)));
    CHECK(q.phi(parse_word("dm3", g3)) == q.phi(parse_word("c7", g3)));
    CHECK(surface_to_sphere(parse_word("c1 c2^-1 c7", g3)).to_string() == "s1 s2^-1 s7");
    CHECK(surface_to_sphere(parse_word("c1", g3), 2).context().d == 2);
    CHECK_THROWS_AS(q.phi(parse_word("s1", WordContext::sphere(8))), invalid_input);
}
