#include <catch_amalgamated.hpp>

#include <cmath>

#include "omsig/closed_forms.hpp"

using namespace omsig;

TEST_CASE("spot values") {
    CHECK(closed_form_phi(4, 1, 2) == Rational(1, 2));
    CHECK(closed_form_phi(6, 2, 3) == Rational(16, 15));
    CHECK(closed_form_phi(6, 2, 2) == Rational(8, 15));
    // barphi_{6,j+1}(s_1..s_i), i, j = 1, 2
    CHECK(closed_form_barphi(6, 2, 2) == Rational(-2, 15));
    CHECK(closed_form_barphi(6, 3, 2) == Rational(-2, 5));
    CHECK(closed_form_barphi(6, 2, 3) == Rational(-4, 15));
    CHECK(closed_form_barphi(6, 3, 3) == Rational(-2, 15));
    for (int m = 3; m <= 12; ++m)
        for (int j = 1; j < m; ++j) CHECK(closed_form_barphi(m, j, m) == 0);
}

TEST_CASE("symmetric in j and m - j") {
    for (int m = 3; m <= 14; ++m)
        for (int j = 1; j < m; ++j)
            for (int r = 2; r <= m; ++r) {
                CHECK(closed_form_phi(m, j, r) == closed_form_phi(m, m - j, r));
                CHECK(closed_form_barphi(m, j, r) == closed_form_barphi(m, m - j, r));
            }
}

TEST_CASE("sin_sign against floating point") {
    for (long q = 1; q <= 12; ++q)
        for (long p = -30; p <= 30; ++p) {
            const double s = std::sin(M_PI * static_cast<double>(p) / static_cast<double>(q));
            const int expected = std::abs(s) < 1e-12 ? 0 : (s > 0 ? 1 : -1);
            CHECK(sin_sign(p, q) == expected);
        }
    CHECK_THROWS_AS(sin_sign(1, 0), invalid_input);
}

TEST_CASE("tau_power_closed_form against the sine products") {
    for (int m = 3; m <= 9; ++m)
        for (int j = 1; j < m; ++j)
            for (int r = 2; r <= m; ++r)
                for (long k = 1; k <= 3L * r * m; ++k) {
                    int s = 0;
                    for (int i = 1; i < r; ++i) {
                        const double x = static_cast<double>(i) / r - static_cast<double>(j) / m;
                        if (std::abs(x) < 1e-12) {
                            s += r < m ? 1 : 0;
                            continue;
                        }
                        const double v = std::sin(k * M_PI * x) * std::sin((k + 1) * M_PI * x);
                        s += std::abs(v) < 1e-12 ? 0 : (v > 0 ? 1 : -1);
                    }
                    CHECK(tau_power_closed_form(m, j, r, k) == s);
                }
}

TEST_CASE("gap identities") {
    bool statement_differs = false;
    for (int m = 3; m <= 16; ++m)
        for (int j = 1; j < m; ++j)
            for (int r = 2; r <= m; ++r) {
                CHECK(gap_closed_form(m, j, r) == closed_form_phi(m, j, r) - closed_form_barphi(m, j, r));
                const long rm = static_cast<long>(r) * m;
                CHECK(power_sum_tau_resolved(m, j, r) == power_sum_tau(m, j, r) - (r == m ? rm : 0));
                if (r < m) CHECK(gap_closed_form(m, j, r) == make_rational(power_sum_tau(m, j, r), rm));
                CHECK(gap_resolved(m, j, r) == make_rational(power_sum_tau_resolved(m, j, r), rm));
                statement_differs = statement_differs || gap_statement_form(m, j, r) != gap_closed_form(m, j, r);
            }
    CHECK(statement_differs);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(closed_form_phi(2, 1, 2), invalid_input);
    CHECK_THROWS_AS(closed_form_phi(5, 0, 2), invalid_input);
    CHECK_THROWS_AS(closed_form_barphi(5, 2, 6), invalid_input);
    CHECK_THROWS_AS(tau_power_closed_form(5, 2, 3, 0), invalid_input);
}
