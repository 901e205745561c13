#pragma once

#include <string>
#include <vector>

#include "omsig/errors.hpp"
#include "omsig/matrix.hpp"
#include "omsig/words.hpp"

namespace omsig {

// Homology class on the genus-g surface in the basis A_1..A_g, B_1..B_g.
struct CurveClass {
    int genus = 1;
    std::vector<long> homology;
    bool separating = false;
    std::string name;
};

// Curve conventions (fixed by the two genus-one anchor matrices and the relation checks):
//   c_1 = B_1, c_{2i} = A_i, c_{2i+1} = B_{i+1} - B_i, c_{2g+1} = -B_g, c_{2g+2} = A_1 + ... + A_g,
//   d_i^+ and d_i^- have class B_i, s_h is separating.
inline const char* curve_convention() {
    return "c1=B1, c2i=Ai, c(2i+1)=B(i+1)-Bi, c(2g+1)=-Bg, c(2g+2)=A1+...+Ag, dpi=dmi=Bi, sep_h separating; "
           "t_c^k(x) = x + k (c.x) c with c.x = c^T J x, J = [[0,I],[-I,0]]";
}

inline CurveClass standard_curve_class(const Generator& x, int g) {
    WordContext::surface(g).validate(x);
    CurveClass c{g, std::vector<long>(2 * g, 0), false, generator_name(x)};
    auto A = [&](int i) -> long& { return c.homology[i - 1]; };
    auto B = [&](int i) -> long& { return c.homology[g + i - 1]; };
    switch (x.family) {
        case Family::Curve: {
            const int i = x.index;
            if (i == 1) B(1) = 1;
            else if (i == 2 * g + 2) for (int k = 1; k <= g; ++k) A(k) = 1;
            else if (i == 2 * g + 1) B(g) = -1;
            else if (i % 2 == 0) A(i / 2) = 1;
            else {
                B((i - 1) / 2 + 1) = 1;
                B((i - 1) / 2) = -1;
            }
            break;
        }
        case Family::DPlus:
        case Family::DMinus:
            B(x.index) = 1;
            break;
        case Family::Separating:
            c.separating = true;
            break;
        default:
            throw invalid_input("no curve class for " + generator_name(x));
    }
    return c;
}

inline CurveClass standard_curve_class(const std::string& name, int g) {
    Word w = parse_word(name, WordContext::surface(g));
    if (w.size() != 1 || w.letters()[0].exponent != 1) throw invalid_input("not a single curve name: " + name);
    return standard_curve_class(w.letters()[0].gen, g);
}

inline long algebraic_intersection(const CurveClass& a, const CurveClass& b) {
    const int g = a.genus;
    long s = 0;
    for (int i = 0; i < g; ++i) s += a.homology[i] * b.homology[g + i] - a.homology[g + i] * b.homology[i];
    return s;
}

// Matrix of t_c^k acting on H_1.
inline RationalMatrix transvection(const CurveClass& c, long k) {
    const int n = 2 * c.genus;
    RationalMatrix M = RationalMatrix::identity(n);
    if (c.separating) return M;
    const RationalMatrix J = symplectic_form(c.genus);
    std::vector<Rational> row(n);  // c^T J
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) row[j] += Rational(c.homology[i]) * J(i, j);
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col)
            if (c.homology[r] != 0 && row[col] != 0) M(r, col) += Rational(k * c.homology[r]) * row[col];
    return M;
}

inline RationalMatrix generator_matrix(const Generator& x, int g, long k = 1) {
    return transvection(standard_curve_class(x, g), k);
}

// Product of letter matrices in word order.
inline RationalMatrix word_to_sp(const Word& w) {
    if (w.context().kind != GroupKind::Surface) throw invalid_input("word_to_sp needs a surface word");
    const int g = w.context().g;
    RationalMatrix M = RationalMatrix::identity(2 * g);
    for (const auto& l : w.letters()) M = M * generator_matrix(l.gen, g, l.exponent);
    return M;
}

inline bool is_symplectic(const RationalMatrix& M) {
    if (!M.square() || M.rows() % 2) return false;
    const RationalMatrix J = symplectic_form(static_cast<int>(M.rows() / 2));
    return transpose(M) * J * M == J;
}

struct RelationCheck {
    std::string name;
    bool holds = false;
};

struct RelationReport {
    int g = 1;
    std::string convention;
    // the same identity with the chain written t_{2g}..t_2; false on homology once g >= 2
    bool descending_chain_form_holds = false;
    std::vector<RelationCheck> checks;
    bool all_hold() const {
        for (const auto& c : checks)
            if (!c.holds) return false;
        return true;
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.holds) out.push_back(c.name);
        return out;
    }
};

inline RelationReport check_relations(int g) {
    const WordContext ctx = WordContext::surface(g);
    RelationReport rep{g, curve_convention(), {}};
    for (const auto& r : relation_catalog(ctx)) rep.checks.push_back({r.name, word_to_sp(r.lhs) == word_to_sp(r.rhs)});

    const RationalMatrix I = RationalMatrix::identity(2 * g);
    rep.checks.push_back({"rho(iota) = -I", word_to_sp(macro_expand("iota", ctx)) == -I});
    for (int i = 1; i <= 2 * g + 2; ++i) {
        RationalMatrix M = generator_matrix(curve(i), g);
        rep.checks.push_back({"c" + std::to_string(i) + " symplectic", is_symplectic(M)});
    }
    // The upper-bound argument uses t_{2g+1}^2 t_{2g}..t_2 t_1^2 = iota (t_2..t_{2g})^{-1}.
    Word lhs(ctx), ascending(ctx);
    lhs.push({curve(2 * g + 1), 2});
    for (int i = 2 * g; i >= 2; --i) lhs.push({curve(i), 1});
    for (int i = 2; i <= 2 * g; ++i) ascending.push({curve(i), 1});
    lhs.push({curve(1), 2});
    rep.checks.push_back({"upper-bound identity t_{2g+1}^2 t_{2g}..t_2 t_1^2 = iota (t_2..t_{2g})^{-1}",
                          word_to_sp(lhs) == -word_to_sp(ascending.inverse())});
    Word descending(ctx);
    for (int i = 2 * g; i >= 2; --i) descending.push({curve(i), 1});
    RationalMatrix a = word_to_sp(lhs), b = word_to_sp(descending.inverse());
    rep.descending_chain_form_holds = a == b || a == -b;
    if (g == 1) {
        rep.checks.push_back({"anchor rho(c2^2)", generator_matrix(curve(2), 1, 2) == RationalMatrix{{1, 2}, {0, 1}}});
        rep.checks.push_back({"anchor rho(dp1^2)", generator_matrix(dplus(1), 1, 2) == RationalMatrix{{1, 0}, {-2, 1}}});
    }
    return rep;
}

}  // namespace omsig
