#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "omsig/closed_forms.hpp"
#include "omsig/quasimorphism.hpp"
#include "omsig/symplectic.hpp"

namespace omsig {

namespace detail {
inline QmMode weakest(QmMode a, QmMode b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }
}  // namespace detail

// barphi(x) + barphi(y) - barphi(xy)
template <class Rep>
QmValue coboundary_barphi(const Quasimorphism<Rep>& q, const Word& x, const Word& y) {
    const QmValue a = q.homogenize(x), b = q.homogenize(y), c = q.homogenize(x * y);
    QmValue out{a.value + b.value - c.value, detail::weakest(detail::weakest(a.mode, b.mode), c.mode), 0, 0, q.label()};
    return out;
}

struct Lemma44Report {
    int g = 1;
    QmValue value;                    // delta barphi(c_2^2..c_2g^2, dp1 dm1 .. dpg dmg)
    std::vector<Rational> summands;   // delta barphi(c_2i^2, dp_i dm_i)
    Rational c2_square_limit;         // lim avg tau(c_2^{2k}, c_2^2)
    Rational alternating_limit;       // lim avg tau(A^k, A), A = c_2^2 dp_1 dm_1
    bool consistent = false;          // value = -2g = sum of summands, each -2, limits 1 and 0
};

inline Lemma44Report lemma44_witness(int g) {
    const MeyerQm q{MeyerRep(g)};
    const WordContext ctx = q.context();
    Lemma44Report rep;
    rep.g = g;
    rep.value = coboundary_barphi(q, macro_expand("lemma44_x", ctx), macro_expand("lemma44_y", ctx));
    Rational total = 0;
    bool each = true;
    for (int i = 1; i <= g; ++i) {
        Word c = letter_word(ctx, curve(2 * i), 2);
        Word d = letter_word(ctx, dplus(i)) * letter_word(ctx, dminus(i));
        QmValue v = coboundary_barphi(q, c, d);
        rep.summands.push_back(v.value);
        total += v.value;
        each = each && v.value == -2 && v.certified();
    }
    const Word c2sq = letter_word(ctx, curve(2), 2);
    rep.c2_square_limit = q.limit(c2sq).value;
    rep.alternating_limit = q.limit(c2sq * letter_word(ctx, dplus(1)) * letter_word(ctx, dminus(1))).value;
    rep.consistent = rep.value.certified() && rep.value.value == -2 * g && total == rep.value.value && each &&
                     rep.c2_square_limit == 1 && rep.alternating_limit == 0;
    return rep;
}

// --- sampling ---------------------------------------------------------------------

struct SamplerConfig {
    unsigned long long seed = 1;
    std::size_t samples = 200;
    int max_length = 8;
    bool include_witnesses = true;
    unsigned threads = 0;  // 0: hardware concurrency
};

// Letters available for random words in a context.
inline std::vector<Generator> sampling_alphabet(const WordContext& ctx) {
    std::vector<Generator> out;
    if (ctx.kind == GroupKind::Sphere)
        for (int i = 1; i <= ctx.m - 1; ++i) out.push_back(sigma(i));
    else
        for (int i = 1; i <= 2 * ctx.g + 1; ++i) out.push_back(curve(i));
    return out;
}

// Uniform random word of length 1..max_length in the alphabet and inverses; reproducible from (seed, index).
inline Word random_word(const WordContext& ctx, std::mt19937_64& rng, int max_length) {
    const auto alphabet = sampling_alphabet(ctx);
    std::uniform_int_distribution<int> len(1, max_length), pick(0, static_cast<int>(alphabet.size()) - 1), sgn(0, 1);
    const int n = len(rng);
    Word w(ctx);
    for (int k = 0; k < n; ++k) w.push({alphabet[pick(rng)], sgn(rng) ? 1 : -1});
    return w;
}

inline std::mt19937_64 sample_rng(unsigned long long seed, std::size_t index) {
    std::seed_seq seq{static_cast<unsigned>(seed & 0xffffffffu), static_cast<unsigned>(seed >> 32),
                      static_cast<unsigned>(index & 0xffffffffu), static_cast<unsigned>(index >> 32)};
    return std::mt19937_64(seq);
}

// Runs f(i) for i in [0, n) on a small pool; results land in slot i.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct DefectSample {
    std::string x, y;
    QmValue delta_barphi;
    int tau = 0;  // = delta phi
    bool witness = false;
};

struct DefectReport {
    std::string context;
    std::size_t samples = 0;
    std::size_t certified = 0;
    Rational max_abs = 0;  // max |delta barphi| over certified samples
    std::string witness_x, witness_y;
    Rational witness_value = 0;
    std::optional<Rational> lower_bound;  // from catalogued witnesses
    std::optional<Rational> upper_bound;  // paper bound
    int max_abs_delta_phi = 0;            // max |tau| on the same samples
    std::vector<DefectSample> violations;
    bool falsified() const { return !violations.empty(); }
};

// Catalogued witnesses: the Lemma 4.4 pair (Meyer, or sphere with m even and j = m/2).
template <class Rep>
std::vector<std::pair<Word, Word>> defect_witnesses(const Quasimorphism<Rep>& q) {
    std::vector<std::pair<Word, Word>> out;
    const WordContext ctx = q.context();
    if constexpr (Quasimorphism<Rep>::kMeyer) {
        out.emplace_back(macro_expand("lemma44_x", ctx), macro_expand("lemma44_y", ctx));
    } else {
        const auto& r = q.rep().rep;
        if (r.m % 2 == 0 && r.m >= 4 && r.d == r.m && 2 * r.j == r.m) {
            const WordContext sctx = WordContext::surface((r.m - 2) / 2);
            out.emplace_back(surface_to_sphere(macro_expand("lemma44_x", sctx), r.d),
                             surface_to_sphere(macro_expand("lemma44_y", sctx), r.d));
        }
    }
    return out;
}

template <class Rep>
std::optional<Rational> paper_defect_bound(const Quasimorphism<Rep>& q) {
    if constexpr (Quasimorphism<Rep>::kMeyer) return Rational(2 * q.rep().g);
    else {
        const auto& r = q.rep().rep;
        if (r.d == r.m) return Rational(r.m - 2);
        return std::nullopt;
    }
}

template <class Rep>
DefectReport defect_search(const Quasimorphism<Rep>& q, const SamplerConfig& cfg) {
    const WordContext ctx = q.context();
    std::vector<std::pair<Word, Word>> pairs;
    std::size_t nwit = 0;
    if (cfg.include_witnesses) {
        pairs = defect_witnesses(q);
        nwit = pairs.size();
    }
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        auto rng = sample_rng(cfg.seed, i);
        Word x = random_word(ctx, rng, cfg.max_length);
        Word y = random_word(ctx, rng, cfg.max_length);
        pairs.emplace_back(std::move(x), std::move(y));
    }
    std::vector<DefectSample> res(pairs.size());
    parallel_for(pairs.size(), cfg.threads, [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        res[i] = {x.to_string(), y.to_string(), coboundary_barphi(q, x, y), q.tau(x, y).tau, i < nwit};
    });

    DefectReport rep;
    rep.context = q.label();
    rep.samples = res.size();
    rep.upper_bound = paper_defect_bound(q);
    bool have = false;
    for (const auto& s : res) {
        rep.max_abs_delta_phi = std::max(rep.max_abs_delta_phi, std::abs(s.tau));
        if (!s.delta_barphi.certified()) continue;
        ++rep.certified;
        const Rational a = abs(s.delta_barphi.value);
        if (s.witness && (!rep.lower_bound || a > *rep.lower_bound)) rep.lower_bound = a;
        if (rep.upper_bound && a > *rep.upper_bound) rep.violations.push_back(s);
        const bool better = !have || a > rep.max_abs ||
                            (a == rep.max_abs && std::tie(s.x, s.y) < std::tie(rep.witness_x, rep.witness_y));
        if (better) {
            have = true;
            rep.max_abs = a;
            rep.witness_x = s.x;
            rep.witness_y = s.y;
            rep.witness_value = s.delta_barphi.value;
        }
    }
    return rep;
}

// --- d = 2 bridge -------------------------------------------------------------------

struct BridgeReport {
    int m = 4;
    std::size_t samples = 0;
    std::size_t agree = 0;
    std::vector<std::pair<std::string, std::string>> mismatches;
};

// tau_{m,2,1} on sphere words against meyer_tau on the genus (m-2)/2 surface words with c_i <-> s_i.
inline BridgeReport meyer_bridge(int m, std::size_t samples, unsigned long long seed, int max_length = 6,
                                 unsigned threads = 0) {
    if (m < 4 || m % 2) throw invalid_input("meyer_bridge needs even m >= 4");
    const int g = (m - 2) / 2;
    const OmegaRep omega(m, 2, 1);
    const MeyerRep meyer(g);
    const WordContext ctx = WordContext::surface(g);
    std::vector<std::pair<Word, Word>> pairs;
    for (std::size_t i = 0; i < samples; ++i) {
        auto rng = sample_rng(seed, i);
        Word x = random_word(ctx, rng, max_length);
        Word y = random_word(ctx, rng, max_length);
        pairs.emplace_back(std::move(x), std::move(y));
    }
    std::vector<char> ok(samples, 0);
    parallel_for(samples, threads, [&](std::size_t i) {
        const auto& [x, y] = pairs[i];
        const int a = form_tau(meyer.form, meyer.image(x), meyer.image(y)).tau;
        const int b = form_tau(omega.form, omega.image(surface_to_sphere(x, 2)), omega.image(surface_to_sphere(y, 2))).tau;
        ok[i] = a == b;
    });
    BridgeReport r{m, samples, 0, {}};
    for (std::size_t i = 0; i < samples; ++i) {
        if (ok[i]) ++r.agree;
        else r.mismatches.emplace_back(pairs[i].first.to_string(), pairs[i].second.to_string());
    }
    return r;
}

// --- Bavard duality ---------------------------------------------------------------

struct BavardTerm {
    std::string id;
    QmValue value;     // homogeneous quasimorphism on the element
    Rational defect;   // upper bound for its defect
};

struct SclBound {
    std::string element;
    std::vector<std::string> quasimorphisms;
    std::optional<Rational> lower;
    std::optional<Rational> upper;
};

// max |barphi(x)| / (2 D) over certified terms
inline SclBound bavard_bound(const std::string& element, const std::vector<BavardTerm>& terms,
                             std::optional<Rational> upper = std::nullopt) {
    SclBound b{element, {}, std::nullopt, upper};
    for (const auto& t : terms) {
        b.quasimorphisms.push_back(t.id);
        if (!t.value.certified() || t.defect <= 0) continue;
        const Rational v = abs(t.value.value) / (2 * t.defect);
        if (!b.lower || v > *b.lower) b.lower = v;
    }
    return b;
}

inline Rational scl_upper_genus(int g) {
    if (g < 1) throw invalid_input("genus must be >= 1");
    return 1 / (2 * (Rational(2 * g + 3) + make_rational(1, g)));
}

inline Rational scl_upper_sphere(int m) {
    if (m < 4) throw invalid_input("sphere bound needs m >= 4");
    return 1 / (2 * (Rational(m + 1) + make_rational(2, m - 2)));
}

// t_{s_1} in M_2 through barphi_{6,2} and D <= 4
inline SclBound cor13_bound() {
    const WordContext sctx = WordContext::surface(2);
    const OmegaQm q(OmegaRep(6, 6, 2));
    const Word x = surface_to_sphere(letter_word(sctx, separating(1)), 6);
    return bavard_bound("sep1 (g=2) = (s1 s2)^6", {{q.label(), q.homogenize(x), Rational(4)}});
}

// t_c in M_1 through barphi_1 and D = 2
inline SclBound remark46_bound() {
    const MeyerQm q{MeyerRep(1)};
    return bavard_bound("c1 (g=1)", {{q.label(), q.homogenize(parse_word("c1", q.context())), Rational(2)}},
                        scl_upper_genus(1));
}

// the Corollary 1.4 element through barphi_g (D = 2g) and barphi_{2g+2, g+1} (D = m-2)
inline SclBound cor14_bound(int g) {
    const WordContext ctx = WordContext::surface(g);
    const Word x = macro_expand("cor14", ctx);
    const MeyerQm mq{MeyerRep(g)};
    const int m = 2 * g + 2;
    const OmegaQm oq(OmegaRep(m, m, m / 2));
    return bavard_bound("cor14 (g=" + std::to_string(g) + ")",
                        {{mq.label(), mq.homogenize(x), Rational(2 * g)},
                         {oq.label(), oq.homogenize(surface_to_sphere(x, m)), Rational(m - 2)}});
}

// --- nonsingularity -----------------------------------------------------------------

struct NonsingularityResult {
    int m = 4;
    RationalMatrix matrix;
    Rational determinant;
    bool nonsingular = false;
};

// ([m/2]-1)^2 matrix with (i, j) entry barphi_{m, j+1}(s_1 ... s_i)
inline NonsingularityResult nonsingularity_check(int m) {
    if (m < 4) throw invalid_input("nonsingularity_check needs m >= 4");
    const int n = m / 2 - 1;
    NonsingularityResult r;
    r.m = m;
    r.matrix = RationalMatrix(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) r.matrix(i - 1, j - 1) = closed_form_barphi(m, j + 1, i + 1);
    r.determinant = det(r.matrix);
    r.nonsingular = r.determinant != 0;
    return r;
}

// --- upper-bound identities ---------------------------------------------------------

struct SclUpperReport {
    std::string form;  // "genus" or "sphere"
    int parameter = 1;
    bool identities_hold = false;
    std::vector<std::string> failures;
    SclBound bound;
};

inline SclUpperReport scl_upper_identity_check_genus(int g) {
    const RelationReport rel = check_relations(g);
    SclUpperReport r{"genus", g, rel.all_hold(), rel.failures(), {}};
    r.bound = SclBound{"c1 (g=" + std::to_string(g) + ")", {}, std::nullopt, scl_upper_genus(g)};
    return r;
}

// On every eigenspace (m, m, j): the sphere catalog, and s_{m-1}^2 s_{m-2}..s_2 s_1^2 (s_2..s_{m-2}) is a deck scalar.
inline SclUpperReport scl_upper_identity_check_sphere(int m) {
    SclUpperReport r{"sphere", m, true, {}, {}};
    for (int j = 1; j <= m - 1; ++j) {
        const EigenspaceRep rep = eigenspace_rep(m, m, j);
        const WordContext ctx = rep.context();
        auto fail = [&](const std::string& what) {
            r.identities_hold = false;
            r.failures.push_back(what + " (j=" + std::to_string(j) + ")");
        };
        for (const auto& rel : relation_catalog(ctx))
            if (!(rep.image(rel.lhs) == rep.image(rel.rhs))) fail(rel.name);
        Word w(ctx);
        w.push({sigma(m - 1), 2});
        for (int i = m - 2; i >= 2; --i) w.push({sigma(i), 1});
        w.push({sigma(1), 2});
        for (int i = 2; i <= m - 2; ++i) w.push({sigma(i), 1});
        Cyclotomic lam;
        if (!is_scalar_matrix(rep.image(w), &lam)) fail("s_{m-1}^2 s_{m-2}..s_2 s_1^2 (s_2..s_{m-2}) scalar");
    }
    r.bound = SclBound{"s1 (m=" + std::to_string(m) + ")", {}, std::nullopt, scl_upper_sphere(m)};
    return r;
}

}  // namespace omsig
