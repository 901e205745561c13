#pragma once

#include <cctype>
#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "omsig/errors.hpp"

namespace omsig {

// Sigma: half twist (lifted) s_i.  Deck: the covering transformation t.
// Curve: Dehn twist c_i.  DPlus/DMinus: twists about d_i^+ / d_i^-.  Separating: s_h.
enum class Family { Sigma, Deck, Curve, DPlus, DMinus, Separating };

struct Generator {
    Family family = Family::Sigma;
    int index = 0;
    auto operator<=>(const Generator&) const = default;
};

struct Letter {
    Generator gen;
    long exponent = 1;
    bool operator==(const Letter&) const = default;
};

enum class GroupKind { Sphere, Surface };

// Sphere: generators s_1..s_{m-1} of the d-fold cover's symmetric mapping class group, plus t.
// Surface: Dehn twists on the genus-g surface.
struct WordContext {
    GroupKind kind = GroupKind::Surface;
    int m = 0;
    int d = 0;
    int g = 0;

    static WordContext sphere(int m, int d = 0) {
        if (m < 3) throw invalid_input("sphere context needs m >= 3");
        if (d == 0) d = m;
        if (d < 2 || m % d != 0) throw invalid_input("sphere context needs d >= 2 dividing m");
        return {GroupKind::Sphere, m, d, 0};
    }
    static WordContext surface(int g) {
        if (g < 1) throw invalid_input("surface context needs g >= 1");
        return {GroupKind::Surface, 0, 0, g};
    }
    bool operator==(const WordContext&) const = default;

    void validate(const Generator& x) const {
        auto bad = [&](const std::string& why) { throw invalid_input("generator out of range: " + why); };
        if (kind == GroupKind::Sphere) {
            if (x.family == Family::Sigma) {
                if (x.index < 1 || x.index > m - 1) bad("s" + std::to_string(x.index) + " needs 1 <= i <= " + std::to_string(m - 1));
            } else if (x.family != Family::Deck) {
                bad("only s_i and t are allowed in a sphere context");
            }
            return;
        }
        switch (x.family) {
            case Family::Curve:
                if (x.index < 1 || x.index > 2 * g + 2) bad("c" + std::to_string(x.index) + " at genus " + std::to_string(g));
                break;
            case Family::DPlus:
            case Family::DMinus:
                if (x.index < 1 || x.index > g) bad("d_" + std::to_string(x.index) + " at genus " + std::to_string(g));
                break;
            case Family::Separating:
                if (x.index < 1 || x.index > g - 1) bad("sep" + std::to_string(x.index) + " at genus " + std::to_string(g));
                break;
            default:
                bad("s_i and t are not allowed in a surface context");
        }
    }
};

inline std::string generator_name(const Generator& x) {
    switch (x.family) {
        case Family::Sigma: return "s" + std::to_string(x.index);
        case Family::Deck: return "t";
        case Family::Curve: return "c" + std::to_string(x.index);
        case Family::DPlus: return "dp" + std::to_string(x.index);
        case Family::DMinus: return "dm" + std::to_string(x.index);
        case Family::Separating: return "sep" + std::to_string(x.index);
    }
    return "?";
}

inline Generator sigma(int i) { return {Family::Sigma, i}; }
inline Generator deck() { return {Family::Deck, 0}; }
inline Generator curve(int i) { return {Family::Curve, i}; }
inline Generator dplus(int i) { return {Family::DPlus, i}; }
inline Generator dminus(int i) { return {Family::DMinus, i}; }
inline Generator separating(int h) { return {Family::Separating, h}; }

// A freely reduced word; adjacent letters with the same generator are always merged.
class Word {
public:
    Word() = default;
    explicit Word(WordContext ctx) : ctx_(ctx) {}
    Word(WordContext ctx, const std::vector<Letter>& letters) : ctx_(ctx) {
        for (const auto& l : letters) push(l);
    }
    Word(WordContext ctx, std::initializer_list<Generator> gens) : ctx_(ctx) {
        for (const auto& x : gens) push({x, 1});
    }

    const WordContext& context() const { return ctx_; }
    const std::vector<Letter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }

    // Total number of unit letters.
    std::size_t length() const {
        std::size_t n = 0;
        for (const auto& l : letters_) n += static_cast<std::size_t>(std::labs(l.exponent));
        return n;
    }

    // Letters with exponents split into +-1 steps.
    std::vector<Letter> unit_letters() const {
        std::vector<Letter> out;
        for (const auto& l : letters_)
            for (long k = 0; k < std::labs(l.exponent); ++k) out.push_back({l.gen, l.exponent > 0 ? 1 : -1});
        return out;
    }

    void push(const Letter& l) {
        if (l.exponent == 0) return;
        ctx_.validate(l.gen);
        if (!letters_.empty() && letters_.back().gen == l.gen) {
            letters_.back().exponent += l.exponent;
            if (letters_.back().exponent == 0) letters_.pop_back();
        } else {
            letters_.push_back(l);
        }
    }

    Word inverse() const {
        Word w(ctx_);
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push({it->gen, -it->exponent});
        return w;
    }

    Word pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        Word w(ctx_);
        for (long k = 0; k < n; ++k) w *= *this;
        return w;
    }

    Word& operator*=(const Word& o) {
        if (!(o.ctx_ == ctx_)) throw invalid_input("cannot multiply words from different contexts");
        for (const auto& l : o.letters_) push(l);
        return *this;
    }
    friend Word operator*(Word a, const Word& b) { return a *= b; }
    friend bool operator==(const Word& a, const Word& b) { return a.ctx_ == b.ctx_ && a.letters_ == b.letters_; }

    std::string to_string() const {
        std::string s;
        for (const auto& l : letters_) {
            if (!s.empty()) s += ' ';
            s += generator_name(l.gen);
            if (l.exponent != 1) s += "^" + std::to_string(l.exponent);
        }
        return s;
    }

private:
    WordContext ctx_;
    std::vector<Letter> letters_;
};

// Free reduction.  Words are kept reduced on construction, so this re-pushes the letters.
inline Word reduce(const Word& w) { return Word(w.context(), w.letters()); }

inline Word letter_word(WordContext ctx, Generator x, long e = 1) { return Word(ctx, {Letter{x, e}}); }

inline Word macro_expand(const std::string& name, const WordContext& ctx, int param = 0);

namespace detail {

class WordParser {
public:
    WordParser(std::string_view text, WordContext ctx) : s_(text), ctx_(ctx) {}

    Word parse() {
        Word w = parse_sequence(false);
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw invalid_input("word parse error at offset " + std::to_string(pos_) + ": " + why);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_item_boundary() const {
        return pos_ >= s_.size() || std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' ||
               s_[pos_] == ')' || s_[pos_] == '^';
    }

    long parse_exponent() {
        // caller consumed '^'
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (digits == pos_) fail("expected an integer exponent");
        if (pos_ - digits > 9) fail("exponent too large");
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    Word parse_sequence(bool nested) {
        Word w(ctx_);
        while (true) {
            skip_ws();
            if (pos_ >= s_.size()) {
                if (nested) fail("missing ')'");
                return w;
            }
            char ch = s_[pos_];
            if (ch == ')') {
                if (!nested) fail("unbalanced ')'");
                return w;
            }
            Word item(ctx_);
            if (ch == '(') {
                ++pos_;
                item = parse_sequence(true);
                ++pos_;  // ')'
            } else {
                item = parse_token();
            }
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                item = item.pow(parse_exponent());
            }
            if (!at_item_boundary()) fail("tokens must be separated by whitespace");
            w *= item;
        }
    }

    Word parse_token() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string tok(s_.substr(start, pos_ - start));
        if (tok.empty()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        if (tok == "t") return letter_word(ctx_, deck());
        if (tok == "iota") return macro_expand("iota", ctx_);
        static const std::pair<const char*, Family> prefixes[] = {
            {"sep", Family::Separating}, {"dp", Family::DPlus}, {"dm", Family::DMinus},
            {"s", Family::Sigma},        {"c", Family::Curve},
        };
        for (const auto& [prefix, fam] : prefixes) {
            std::string_view p(prefix);
            if (tok.size() <= p.size() || tok.compare(0, p.size(), p) != 0) continue;
            std::string num = tok.substr(p.size());
            bool digits = num[0] != '0' || num.size() == 1;
            for (char ch : num) digits = digits && std::isdigit(static_cast<unsigned char>(ch));
            if (!digits || num.size() > 6) break;
            try {
                return letter_word(ctx_, Generator{fam, std::stoi(num)});
            } catch (const invalid_input& e) {
                throw invalid_input("bad token '" + tok + "': " + e.what());
            }
        }
        throw invalid_input("word parse error: unknown token '" + tok + "'");
    }

    std::string_view s_;
    WordContext ctx_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Grammar (see README): word := item*, item := (token | '(' word ')') ['^' int].
inline Word parse_word(std::string_view text, const WordContext& ctx) { return detail::WordParser(text, ctx).parse(); }

// --- macros -------------------------------------------------------------------

namespace detail {

inline void require_surface(const WordContext& ctx, const std::string& name) {
    if (ctx.kind != GroupKind::Surface) throw invalid_input("macro '" + name + "' needs a surface context");
}
inline void require_sphere(const WordContext& ctx, const std::string& name) {
    if (ctx.kind != GroupKind::Sphere) throw invalid_input("macro '" + name + "' needs a sphere context");
}

// c_n c_{n-1} ... c_1
inline Word descending_chain(const WordContext& ctx, int n) {
    Word w(ctx);
    for (int i = n; i >= 1; --i) w.push({curve(i), 1});
    return w;
}

}  // namespace detail

// Named elements.  `param` is h for "sep", i for "dpair", unused otherwise.
//   iota         c_{2g+1} ... c_1 c_1 ... c_{2g+1}   (c_3 written c_1 at g = 1)
//   sep          (c_{2h} ... c_1)^{4h+2}             twist about s_h via the even chain
//   dpair        (c_{2i-1} ... c_1)^{2i}             d_i^+ d_i^- via the odd chain
//   s0           c_1
//   cor14        c^{2g+8} (dp2 dm2 ... dp_{g-1} dm_{g-1})^2 (sep1 ... sep_{g-1})^{-1}, c = c_{2g+1}
//   lemma44_x    c_2^2 c_4^2 ... c_{2g}^2
//   lemma44_y    dp1 dm1 ... dpg dmg
//   delta        s_1 ... s_{m-1}
//   sphere_lift  s_1 ... s_{m-2} s_{m-1}^2 s_{m-2} ... s_1
inline Word macro_expand(const std::string& name, const WordContext& ctx, int param) {
    const int g = ctx.g;
    if (name == "iota") {
        detail::require_surface(ctx, name);
        std::vector<int> idx;
        for (int i = 2 * g + 1; i >= 1; --i) idx.push_back(i);
        if (g == 1) idx = {1, 2, 1};
        std::vector<Letter> letters;
        for (int i : idx) letters.push_back({curve(i), 1});
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) letters.push_back({curve(*it), 1});
        return Word(ctx, letters);
    }
    if (name == "sep") {
        detail::require_surface(ctx, name);
        if (param < 1 || param > g - 1) throw invalid_input("sep macro needs 1 <= h <= g-1");
        return detail::descending_chain(ctx, 2 * param).pow(4 * param + 2);
    }
    if (name == "dpair") {
        detail::require_surface(ctx, name);
        if (param < 1 || param > g) throw invalid_input("dpair macro needs 1 <= i <= g");
        if (param == g) return letter_word(ctx, curve(2 * g + 1), 2);
        return detail::descending_chain(ctx, 2 * param - 1).pow(2 * param);
    }
    if (name == "s0") {
        detail::require_surface(ctx, name);
        return letter_word(ctx, curve(1));
    }
    if (name == "cor14") {
        detail::require_surface(ctx, name);
        if (g < 2) throw invalid_input("cor14 macro needs g >= 2");
        Word w = letter_word(ctx, curve(2 * g + 1), 2 * g + 8);
        Word pairs(ctx);
        for (int i = 2; i <= g - 1; ++i) {
            pairs.push({dplus(i), 1});
            pairs.push({dminus(i), 1});
        }
        w *= pairs.pow(2);
        Word seps(ctx);
        for (int h = 1; h <= g - 1; ++h) seps.push({separating(h), 1});
        return w * seps.inverse();
    }
    if (name == "lemma44_x") {
        detail::require_surface(ctx, name);
        Word w(ctx);
        for (int i = 1; i <= g; ++i) w.push({curve(2 * i), 2});
        return w;
    }
    if (name == "lemma44_y") {
        detail::require_surface(ctx, name);
        Word w(ctx);
        for (int i = 1; i <= g; ++i) {
            w.push({dplus(i), 1});
            w.push({dminus(i), 1});
        }
        return w;
    }
    if (name == "delta") {
        detail::require_sphere(ctx, name);
        Word w(ctx);
        for (int i = 1; i <= ctx.m - 1; ++i) w.push({sigma(i), 1});
        return w;
    }
    if (name == "sphere_lift") {
        detail::require_sphere(ctx, name);
        Word w(ctx);
        for (int i = 1; i <= ctx.m - 2; ++i) w.push({sigma(i), 1});
        w.push({sigma(ctx.m - 1), 2});
        for (int i = ctx.m - 2; i >= 1; --i) w.push({sigma(i), 1});
        return w;
    }
    throw invalid_input("unknown macro '" + name + "'");
}

// --- relation catalog ------------------------------------------------------------

struct RelationInstance {
    std::string name;
    Word lhs;
    Word rhs;
};

// Relations that must hold in the group; each yields an equality of representation images.
inline std::vector<RelationInstance> relation_catalog(const WordContext& ctx) {
    std::vector<RelationInstance> out;
    if (ctx.kind == GroupKind::Sphere) {
        const int m = ctx.m;
        for (int i = 1; i + 1 <= m - 1; ++i) {
            Word a = letter_word(ctx, sigma(i)), b = letter_word(ctx, sigma(i + 1));
            out.push_back({"braid s" + std::to_string(i) + " s" + std::to_string(i + 1), a * b * a, b * a * b});
        }
        for (int i = 1; i <= m - 1; ++i)
            for (int k = i + 2; k <= m - 1; ++k) {
                Word a = letter_word(ctx, sigma(i)), b = letter_word(ctx, sigma(k));
                out.push_back({"commute s" + std::to_string(i) + " s" + std::to_string(k), a * b, b * a});
            }
        for (int i = 1; i <= m - 1; ++i) {
            Word a = letter_word(ctx, sigma(i)), t = letter_word(ctx, deck());
            out.push_back({"deck commutes with s" + std::to_string(i), a * t, t * a});
        }
        // with the deck map acting on the omega^j eigenspace by omega^j, this word acts by omega^{-j}
        out.push_back({"sphere lift", macro_expand("sphere_lift", ctx), letter_word(ctx, deck(), -1)});
        out.push_back({"deck order", letter_word(ctx, deck(), ctx.d), Word(ctx)});
        return out;
    }
    const int g = ctx.g;
    const int n = 2 * g + 1;
    for (int i = 1; i + 1 <= 2 * g + 1; ++i) {
        Word a = letter_word(ctx, curve(i)), b = letter_word(ctx, curve(i + 1));
        out.push_back({"braid c" + std::to_string(i) + " c" + std::to_string(i + 1), a * b * a, b * a * b});
    }
    for (int i = 1; i <= n; ++i)
        for (int k = i + 2; k <= n; ++k) {
            Word a = letter_word(ctx, curve(i)), b = letter_word(ctx, curve(k));
            out.push_back({"commute c" + std::to_string(i) + " c" + std::to_string(k), a * b, b * a});
        }
    // c_{2g+2} bounds a neighbourhood of c_2 .. c_{2g}
    for (int i = 2; i <= 2 * g; ++i) {
        Word a = letter_word(ctx, curve(2 * g + 2)), b = letter_word(ctx, curve(i));
        out.push_back({"commute c" + std::to_string(2 * g + 2) + " c" + std::to_string(i), a * b, b * a});
    }
    Word iota = macro_expand("iota", ctx);
    out.push_back({"iota squared", iota * iota, Word(ctx)});
    for (int i = 1; i <= n; ++i) {
        Word a = letter_word(ctx, curve(i));
        out.push_back({"iota central c" + std::to_string(i), iota * a, a * iota});
    }
    if (g >= 2) {
        Word chain(ctx);
        for (int i = 2 * g; i >= 2; --i) chain.push({curve(i), 1});
        out.push_back({"even chain c_2g..c_2", chain.pow(2 * g), letter_word(ctx, curve(2 * g + 2), 2)});
    }
    out.push_back({"odd chain top", detail::descending_chain(ctx, 2 * g - 1).pow(2 * g),
                   letter_word(ctx, curve(2 * g + 1), 2)});
    for (int h = 1; h <= g - 1; ++h)
        out.push_back({"even chain s" + std::to_string(h), letter_word(ctx, separating(h)), macro_expand("sep", ctx, h)});
    for (int i = 1; i <= g; ++i) {
        Word pair = letter_word(ctx, dplus(i)) * letter_word(ctx, dminus(i));
        Word chain = detail::descending_chain(ctx, 2 * i - 1).pow(2 * i);
        out.push_back({"odd chain d" + std::to_string(i), pair, chain});
        Word c = letter_word(ctx, curve(2 * i));
        Word dmdp = letter_word(ctx, dminus(i)) * letter_word(ctx, dplus(i));
        Word lhs = (c * dmdp * c).pow(2);
        Word rhs(ctx);
        if (i >= 2) rhs *= letter_word(ctx, separating(i - 1));
        if (i <= g - 1) rhs *= letter_word(ctx, separating(i));
        rhs *= dmdp.pow(-2);
        out.push_back({"separating identity " + std::to_string(i), lhs, rhs});
    }
    return out;
}

}  // namespace omsig
