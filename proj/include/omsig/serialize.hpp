#pragma once

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "omsig/defect.hpp"
#include "omsig/signature.hpp"

namespace omsig {

using json = nlohmann::json;

inline json to_json(const Rational& q) { return q.get_str(); }

inline json to_json(const Cyclotomic& x) {
    json c = json::array();
    for (const auto& q : x.coeffs()) c.push_back(q.get_str());
    return {{"level", x.level()}, {"coeffs", c}};
}

inline Cyclotomic cyclotomic_from_json(const json& j) {
    const int level = j.at("level").get<int>();
    std::vector<Rational> c;
    for (const auto& s : j.at("coeffs")) c.push_back(parse_rational(s.get<std::string>()));
    return Cyclotomic::from_coeffs(level, std::move(c));
}

template <class T>
json to_json(const Matrix<T>& a) {
    json rows = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(to_json(a(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const SignatureTriple& s) { return {{"pos", s.positive}, {"neg", s.negative}, {"null", s.null}}; }

inline json to_json(const CocycleValue& v) { return {{"tau", v.tau}, {"dimV", v.dim}}; }

inline json to_json(const QmValue& v) {
    json j = {{"value", v.value.get_str()}, {"mode", v.mode_string()}};
    if (!v.context.empty()) j["context"] = v.context;
    return j;
}

inline json to_json(const Lemma44Report& r) {
    json s = json::array();
    for (const auto& q : r.summands) s.push_back(q.get_str());
    return {{"g", r.g},
            {"value", to_json(r.value)},
            {"summands", s},
            {"c2_square_limit", r.c2_square_limit.get_str()},
            {"alternating_limit", r.alternating_limit.get_str()},
            {"consistent", r.consistent}};
}

inline json to_json(const SclBound& b) {
    json j = {{"element", b.element}, {"quasimorphisms", b.quasimorphisms}};
    j["lower"] = b.lower ? json(b.lower->get_str()) : json(nullptr);
    j["upper"] = b.upper ? json(b.upper->get_str()) : json(nullptr);
    return j;
}

inline json to_json(const DefectReport& r) {
    json v = json::array();
    for (const auto& s : r.violations)
        v.push_back({{"x", s.x}, {"y", s.y}, {"delta_barphi", to_json(s.delta_barphi)}});
    return {{"context", r.context},
            {"samples", r.samples},
            {"certified", r.certified},
            {"max_abs_delta_barphi", r.max_abs.get_str()},
            {"witness", {{"x", r.witness_x}, {"y", r.witness_y}, {"value", r.witness_value.get_str()}}},
            {"lower_bound", r.lower_bound ? json(r.lower_bound->get_str()) : json(nullptr)},
            {"upper_bound", r.upper_bound ? json(r.upper_bound->get_str()) : json(nullptr)},
            {"max_abs_delta_phi", r.max_abs_delta_phi},
            {"violations", v}};
}

inline json to_json(const NonsingularityResult& r) {
    return {{"m", r.m}, {"matrix", to_json(r.matrix)}, {"det", r.determinant.get_str()}, {"nonsingular", r.nonsingular}};
}

inline json to_json(const RelationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"holds", c.holds}});
    return {{"g", r.g},
            {"convention", r.convention},
            {"all_hold", r.all_hold()},
            {"descending_chain_form_holds", r.descending_chain_form_holds},
            {"checks", checks}};
}

inline json to_json(const SclUpperReport& r) {
    return {{"form", r.form},
            {"parameter", r.parameter},
            {"identities_hold", r.identities_hold},
            {"failures", r.failures},
            {"bound", to_json(r.bound)}};
}

// --- grids ------------------------------------------------------------------------------

struct GridCell {
    int m = 4, j = 1, r = 2;
    Rational phi, phi_expected;
    QmValue barphi;
    Rational barphi_expected;
    bool phi_ok() const { return phi == phi_expected; }
    bool barphi_ok() const { return barphi.certified() && barphi.value == barphi_expected; }
};

inline json to_json(const GridCell& c) {
    return {{"m", c.m},
            {"j", c.j},
            {"r", c.r},
            {"phi", c.phi.get_str()},
            {"phi_expected", c.phi_expected.get_str()},
            {"phi_ok", c.phi_ok()},
            {"barphi", c.barphi.value.get_str()},
            {"barphi_mode", c.barphi.mode_string()},
            {"barphi_expected", c.barphi_expected.get_str()},
            {"barphi_ok", c.barphi_ok()}};
}

// one JSON object per line
inline void write_jsonl(std::ostream& os, const std::vector<GridCell>& cells) {
    for (const auto& c : cells) os << to_json(c).dump() << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<GridCell>& cells) {
    os << "m,j,r,phi,phi_expected,phi_ok,barphi,barphi_mode,barphi_expected,barphi_ok\n";
    for (const auto& c : cells)
        os << c.m << ',' << c.j << ',' << c.r << ',' << c.phi.get_str() << ',' << c.phi_expected.get_str() << ','
           << (c.phi_ok() ? 1 : 0) << ',' << c.barphi.value.get_str() << ",\"" << c.barphi.mode_string() << "\","
           << c.barphi_expected.get_str() << ',' << (c.barphi_ok() ? 1 : 0) << '\n';
}

}  // namespace omsig
