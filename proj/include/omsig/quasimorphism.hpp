#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "omsig/cocycle.hpp"
#include "omsig/errors.hpp"
#include "omsig/rational.hpp"
#include "omsig/words.hpp"

namespace omsig {

// phi(xy) = phi(x) + phi(y) - tau(x, y)
inline constexpr int kCoboundarySign = 1;

enum class QmMode { Exact, Period, Unconverged };

struct QmValue {
    Rational value;
    QmMode mode = QmMode::Exact;
    long k0 = 0;
    long period = 0;
    std::string context;

    bool certified() const { return mode != QmMode::Unconverged; }
    std::string mode_string() const {
        switch (mode) {
            case QmMode::Exact: return "exact";
            case QmMode::Period: return "period(" + std::to_string(k0) + "," + std::to_string(period) + ")";
            case QmMode::Unconverged: return "unconverged";
        }
        return "?";
    }
};

struct LimitOptions {
    long initial_window = 32;
    long max_window = 4096;
};

struct LimitResult {
    Rational value;
    QmMode mode = QmMode::Exact;
    long k0 = 0;
    long period = 0;
    std::vector<int> sequence;  // tau(A^k, A), k = 1.. as far as computed
};

namespace detail {

// Smallest period P <= W/4 (then smallest preperiod k0 <= W/4) with s_{k+P} = s_k for k0 <= k <= W-P.
inline std::optional<std::pair<long, long>> detect_period(const std::vector<int>& s, long W) {
    for (long P = 1; P <= W / 4; ++P)
        for (long k0 = 1; k0 <= W / 4; ++k0) {
            bool ok = true;
            for (long k = k0; k + P <= W && ok; ++k) ok = s[k - 1] == s[k + P - 1];
            if (ok) return std::make_pair(k0, P);
        }
    return std::nullopt;
}

}  // namespace detail

// lim_n (1/n) sum_{k=1}^{n-1} tau(A^k, A), with tau(A^k, A) from the Barge-Ghys sum.
template <class T>
LimitResult power_cocycle_limit(const Matrix<T>& form, const Matrix<T>& A, const LimitOptions& opt = {}) {
    const std::size_t n = A.rows();
    LimitResult out;
    if (n == 0) return out;
    const T one = A(0, 0) - A(0, 0) + T(1);
    const Matrix<T> I = Matrix<T>::identity(n, one);
    if (A == I) return out;
    // A = +-(I + N) with N^2 = 0: the Barge-Ghys sum is a scalar multiple of N
    const Matrix<T> Np = A - I, Nm = A + I;
    if (is_zero_matrix(Np * Np)) {
        Matrix<T> H = form * Np;
        H *= T(-1);
        out.value = signature_hermitian(H).signature();
        return out;
    }
    if (is_zero_matrix(Nm * Nm)) return out;

    PowerCocycleSequence<T> seq(form, A);
    long W = opt.initial_window;
    while (true) {
        while (static_cast<long>(out.sequence.size()) < W) {
            out.sequence.push_back(seq.next());
            if (seq.current_power() == I) {
                // finite order N: tau(A^k, A) has period N and tau(A^N, A) = 0
                const long N = seq.index();
                Rational s = 0;
                for (int v : out.sequence) s += v;
                out.value = s / N;
                out.mode = QmMode::Exact;
                return out;
            }
        }
        if (auto p = detail::detect_period(out.sequence, W)) {
            out.k0 = p->first;
            out.period = p->second;
            Rational s = 0;
            for (long k = out.k0; k < out.k0 + out.period; ++k) s += out.sequence[k - 1];
            out.value = s / out.period;
            out.mode = QmMode::Period;
            return out;
        }
        if (W >= opt.max_window) break;
        W *= 2;
    }
    // best estimate: mean over the second half of the window
    Rational s = 0;
    const long half = W / 2;
    for (long k = half; k < W; ++k) s += out.sequence[k];
    out.value = s / (W - half);
    out.mode = QmMode::Unconverged;
    return out;
}

// phi(x) for x whose image has finite order N: (1/N) sum_{k=1}^{N-1} tau(x^k, x).
template <class Rep>
Rational phi_torsion(const CocycleEvaluator<Rep>& ev, const typename Rep::matrix_type& A, long cap = 10000) {
    const auto I = ev.rep().identity();
    auto P = ev.rep().normalize(A);
    std::vector<typename Rep::matrix_type> powers;
    long N = 1;
    while (!(P == I)) {
        if (N >= cap) throw invalid_input("phi_torsion: image is not of finite order (checked up to " + std::to_string(cap) + ")");
        powers.push_back(P);
        P = ev.rep().normalize(P * A);
        ++N;
    }
    Rational s = 0;
    for (const auto& Pk : powers) s += ev.tau_matrices(Pk, A).tau;
    return s / N;
}

// Replace separating twists and d-curve pairs by chain words: sep_h -> (c_{2h}..c_1)^{4h+2},
// dp_i dm_i -> (c_{2i-1}..c_1)^{2i}; dp_1, dm_1 -> c_1 and dp_g, dm_g -> c_{2g+1}.
inline Word expand_surface_letters(const Word& w) {
    const WordContext& ctx = w.context();
    if (ctx.kind != GroupKind::Surface) return w;
    const int g = ctx.g;
    const auto units = w.unit_letters();
    Word out(ctx);
    for (std::size_t p = 0; p < units.size(); ++p) {
        const Letter& l = units[p];
        const long e = l.exponent;
        switch (l.gen.family) {
            case Family::Separating:
                out *= e > 0 ? macro_expand("sep", ctx, l.gen.index) : macro_expand("sep", ctx, l.gen.index).inverse();
                break;
            case Family::DPlus:
            case Family::DMinus: {
                const int i = l.gen.index;
                if (i == 1) {
                    out.push({curve(1), e});
                    break;
                }
                if (i == g) {
                    out.push({curve(2 * g + 1), e});
                    break;
                }
                const Family partner = l.gen.family == Family::DPlus ? Family::DMinus : Family::DPlus;
                if (p + 1 >= units.size() || units[p + 1].gen.family != partner || units[p + 1].gen.index != i ||
                    units[p + 1].exponent != e)
                    throw invalid_input(generator_name(l.gen) + " must be paired with the adjacent " +
                                        generator_name({partner, i}) + " (2 <= i <= g-1)");
                Word pair = macro_expand("dpair", ctx, i);
                out *= e > 0 ? pair : pair.inverse();
                ++p;
                break;
            }
            default:
                out.push(l);
        }
    }
    return out;
}

// Birman-Hilden: c_i -> s_i on the sphere with m = 2g+2 points.
inline Word surface_to_sphere(const Word& w, int d = 0) {
    if (w.context().kind != GroupKind::Surface) throw invalid_input("surface_to_sphere needs a surface word");
    const int g = w.context().g;
    const WordContext sctx = WordContext::sphere(2 * g + 2, d ? d : 2 * g + 2);
    Word out(sctx);
    const Word e = expand_surface_letters(w);
    for (const auto& l : e.letters()) {
        if (l.gen.family != Family::Curve || l.gen.index > 2 * g + 1)
            throw invalid_input("no sphere image for " + generator_name(l.gen));
        out.push({sigma(l.gen.index), l.exponent});
    }
    return out;
}

// The cobounding function of tau on a representation, with its homogenization.
template <class Rep>
class Quasimorphism {
public:
    using matrix_type = typename Rep::matrix_type;
    static constexpr bool kMeyer = std::is_same_v<Rep, MeyerRep>;

    explicit Quasimorphism(Rep rep, LimitOptions opt = {}) : ev_(std::move(rep)), opt_(opt) { bootstrap(); }

    const CocycleEvaluator<Rep>& evaluator() const { return ev_; }
    const Rep& rep() const { return ev_.rep(); }
    std::string label() const { return ev_.rep().label(); }
    WordContext context() const { return ev_.rep().context(); }

    // common value on the conjugate generators s_i (resp. c_1..c_{2g+1})
    const Rational& generator_value() const { return x_; }
    // the relation word used to solve for it and its torsion value
    const Word& bootstrap_relation() const { return *relation_; }
    const Rational& bootstrap_relation_value() const { return relation_value_; }

    Word expand(const Word& w) const {
        check_context(w);
        if constexpr (kMeyer) return expand_surface_letters(w);
        else return w;
    }

    CocycleValue tau(const Word& x, const Word& y) const {
        check_context(x);
        check_context(y);
        return ev_.tau(x, y);
    }

    // phi(g_1...g_n) = sum phi(g_i) - sum_k tau(g_1...g_k, g_{k+1})
    Rational phi(const Word& w) const {
        const Word e = expand(w);
        const auto units = e.unit_letters();
        matrix_type P = ev_.rep().identity();
        Rational s = 0;
        for (std::size_t k = 0; k < units.size(); ++k) {
            const matrix_type& L = letter_matrix(units[k]);
            s += letter_value(units[k]);
            if (k > 0) s -= kCoboundarySign * ev_.tau_matrices(P, L).tau;
            P = ev_.rep().normalize(P * L);
        }
        return s;
    }

    // phi(x) + phi(y) - phi(xy)
    Rational delta_phi(const Word& x, const Word& y) const { return phi(x) + phi(y) - phi(x * y); }

    LimitResult limit(const Word& w) const {
        return power_cocycle_limit(ev_.rep().form, ev_.rep().image(expand(w)), opt_);
    }

    QmValue homogenize(const Word& w) const {
        const Rational p = phi(w);
        const LimitResult lim = limit(w);
        return {p - lim.value, lim.mode, lim.k0, lim.period, label()};
    }

private:
    void check_context(const Word& w) const {
        const WordContext c = context(), o = w.context();
        if (c.kind != o.kind || (c.kind == GroupKind::Surface ? c.g != o.g : (c.m != o.m || c.d != o.d)))
            throw invalid_input("word context does not match " + label());
    }

    const matrix_type& letter_matrix(const Letter& l) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = letter_mats_.find(key(l));
        if (it != letter_mats_.end()) return it->second;
        return letter_mats_.emplace(key(l), ev_.rep().image(Word(context(), std::vector<Letter>{l}))).first->second;
    }

    static std::pair<int, std::pair<int, long>> key(const Letter& l) {
        return {static_cast<int>(l.gen.family), {l.gen.index, l.exponent}};
    }

    // value on a positive unit letter
    Rational positive_value(const Generator& x) const {
        if constexpr (kMeyer) {
            if (x.family == Family::Curve && x.index <= 2 * rep().g + 1) return x_;
            if (x.family == Family::Curve) return top_curve_value_;
        } else {
            if (x.family == Family::Sigma) return x_;
            if (x.family == Family::Deck) return deck_value_;
        }
        throw invalid_input("no quasimorphism value for letter " + generator_name(x));
    }

    Rational letter_value(const Letter& l) const {
        const Rational v = positive_value(l.gen);
        if (l.exponent > 0) return v;
        // phi(x^{-1}) = -phi(x) + tau(x, x^{-1})
        const Letter pos{l.gen, 1};
        return -v + kCoboundarySign * ev_.tau_matrices(letter_matrix(pos), letter_matrix(l)).tau;
    }

    // Solve L * x - sum prefix tau = phi(relation image) for the relation word of conjugate generators.
    void bootstrap() {
        const WordContext ctx = context();
        if constexpr (kMeyer) relation_ = macro_expand("iota", ctx);
        else relation_ = macro_expand("sphere_lift", ctx);
        const auto units = relation_->unit_letters();
        relation_value_ = phi_torsion(ev_, ev_.rep().image(*relation_));
        matrix_type P = ev_.rep().identity();
        Rational corr = 0;
        for (std::size_t k = 0; k < units.size(); ++k) {
            const matrix_type& L = letter_matrix(units[k]);
            if (k > 0) corr += ev_.tau_matrices(P, L).tau;
            P = ev_.rep().normalize(P * L);
        }
        x_ = (relation_value_ + kCoboundarySign * corr) / static_cast<long>(units.size());
        if constexpr (kMeyer) {
            const int g = rep().g;
            if (g == 1) top_curve_value_ = x_;
            else {
                // (c_{2g}..c_2)^{2g} = c_{2g+2}^2 and phi(c^2) = 2 phi(c) - tau(c, c)
                Word chain(ctx);
                for (int i = 2 * g; i >= 2; --i) chain.push({curve(i), 1});
                const matrix_type& C = letter_matrix({curve(2 * g + 2), 1});
                top_curve_value_ = (phi(chain.pow(2 * g)) + ev_.tau_matrices(C, C).tau) / 2;
            }
        } else {
            deck_value_ = phi_torsion(ev_, letter_matrix({deck(), 1}));
        }
    }

    CocycleEvaluator<Rep> ev_;
    LimitOptions opt_;
    std::optional<Word> relation_;
    Rational relation_value_ = 0;
    Rational x_ = 0;
    Rational top_curve_value_ = 0;
    Rational deck_value_ = 0;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, std::pair<int, long>>, matrix_type> letter_mats_;
};

using MeyerQm = Quasimorphism<MeyerRep>;
using OmegaQm = Quasimorphism<OmegaRep>;

inline Rational bootstrap_generator(int m, int j) { return OmegaQm(OmegaRep(m, m, j)).generator_value(); }

}  // namespace omsig
