#include <catch_amalgamated.hpp>

#include <set>

#include "omsig/reproduce.hpp"

using namespace omsig;

TEST_CASE("registry") {
    const auto ids = target_ids();
    const std::set<std::string> unique(ids.begin(), ids.end());
    CHECK(unique.size() == ids.size());
    for (const char* id : {"thm1.1", "headline", "cor1.2", "cor1.3", "cor1.4", "lemma4.4", "lemma4.3", "lemma6.6",
                           "meyer-values", "meyer-bridge", "remark4.6", "scl-upper", "defect"})
        CHECK(unique.count(id) == 1);
    for (const auto& t : target_registry()) {
        CHECK_FALSE(t.description.empty());
        CHECK_FALSE(t.provenance.empty());
    }
    CHECK_THROWS_AS(find_target("nope"), invalid_input);
    CHECK_THROWS_AS(reproduce("nope", {}), invalid_input);
}

TEST_CASE("cheap targets pass and are deterministic") {
    ReproduceOptions o;
    o.threads = 1;
    for (const char* id : {"headline", "cor1.2", "cor1.3", "remark4.6"}) {
        const ReproduceReport r = reproduce(id, o);
        REQUIRE(r.results.size() == 1);
        CHECK(r.results[0].status == TargetStatus::Pass);
        CHECK(r.exit_code() == 0);
        CHECK(to_json(r, o).dump() == to_json(reproduce(id, o), o).dump());
    }
}

TEST_CASE("small grid") {
    const auto cells = theorem11_grid(4, 5, 1);
    CHECK(cells.size() == 3 * 3 + 4 * 4);
    for (const auto& c : cells) {
        CHECK(c.barphi_ok());
        CHECK(c.phi_ok() == (c.r < c.m));
    }
    CHECK(std::is_sorted(cells.begin(), cells.end(),
                         [](const auto& a, const auto& b) { return std::tie(a.m, a.j, a.r) < std::tie(b.m, b.j, b.r); }));
}

TEST_CASE("brute-force power sums") {
    for (int m = 4; m <= 5; ++m)
        for (int j = 1; j < m; ++j)
            for (int r = 2; r <= m; ++r) CHECK(brute_power_sum(m, j, r) == power_sum_tau_resolved(m, j, r));
}

TEST_CASE("exit codes") {
    ReproduceReport r;
    r.results.push_back({"a", "", "", TargetStatus::Pass, {}});
    CHECK(r.exit_code() == 0);
    r.results.push_back({"b", "", "", TargetStatus::Unconverged, {}});
    CHECK(r.exit_code() == 3);
    r.results.push_back({"c", "", "", TargetStatus::Fail, {}});
    CHECK(r.exit_code() == 1);
    CHECK_FALSE(r.all_pass());
}
