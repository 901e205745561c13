#include <catch_amalgamated.hpp>

#include <random>

#include "omsig/words.hpp"

using namespace omsig;

TEST_CASE("parse and print") {
    const WordContext s6 = WordContext::sphere(6);
    const Word w = parse_word("(s1 s2)^6", s6);
    CHECK(w.length() == 12);
    CHECK(w.size() == 12);
    CHECK(parse_word("s1 s1 s1", s6).to_string() == "s1^3");
    CHECK(parse_word("s3^-2 t", s6).to_string() == "s3^-2 t");
    CHECK(parse_word("", s6).empty());
    CHECK(parse_word("  ", s6).empty());
    CHECK(parse_word("((s1)^2 s2)^-1", s6).to_string() == "s2^-1 s1^-2");

    const WordContext g2 = WordContext::surface(2);
    CHECK(parse_word("c1 dp1 dm2 sep1 c6", g2).size() == 5);
    CHECK(parse_word("iota", g2) == macro_expand("iota", g2));
}

TEST_CASE("free reduction") {
    const WordContext s5 = WordContext::sphere(5);
    CHECK(parse_word("s1 s2 s2^-1 s1^-1", s5).empty());
    CHECK(parse_word("s1^3 s1^-3 s2", s5).to_string() == "s2");
    const Word w = parse_word("s1 s2^-1 s3 s4^2", s5);
    CHECK((w * w.inverse()).empty());
    CHECK(w.inverse().inverse() == w);
    CHECK(w.pow(3).length() == 3 * w.length());
    CHECK(w.pow(-1) == w.inverse());
    CHECK(reduce(w) == w);
}

TEST_CASE("parse errors name the offending token") {
    const WordContext s4 = WordContext::sphere(4);
    auto message = [&](const std::string& text) {
        try {
            parse_word(text, s4);
        } catch (const invalid_input& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("s1 x7").find("x7") != std::string::npos);
    CHECK(message("s1 s9").find("s9") != std::string::npos);
    CHECK(message("c1").find("c1") != std::string::npos);
    CHECK(message("s01").find("s01") != std::string::npos);
    CHECK_FALSE(message("(s1 s2").empty());
    CHECK_FALSE(message("s1)").empty());
    CHECK_FALSE(message("s1^").empty());
    CHECK_FALSE(message("s1^x").empty());
    CHECK_FALSE(message("s1s2").empty());
    CHECK_THROWS_AS(parse_word("sep1", WordContext::surface(1)), invalid_input);
    CHECK_THROWS_AS(parse_word("dp3", WordContext::surface(2)), invalid_input);
    CHECK_THROWS_AS(parse_word("c7", WordContext::surface(2)), invalid_input);
    CHECK_NOTHROW(parse_word("c6", WordContext::surface(2)));
}

TEST_CASE("contexts") {
    CHECK_THROWS_AS(WordContext::sphere(2), invalid_input);
    CHECK_THROWS_AS(WordContext::sphere(6, 4), invalid_input);
    CHECK(WordContext::sphere(6, 3).d == 3);
    CHECK(WordContext::sphere(6).d == 6);
    CHECK_THROWS_AS(WordContext::surface(0), invalid_input);
    const WordContext a = WordContext::sphere(4), b = WordContext::sphere(5);
    CHECK_THROWS_AS(parse_word("s1", a) * parse_word("s1", b), invalid_input);
}

TEST_CASE("macros") {
    const WordContext s5 = WordContext::sphere(5);
    CHECK(macro_expand("sphere_lift", s5).length() == 2 * 5 - 2);
    CHECK(macro_expand("sphere_lift", s5).to_string() == "s1 s2 s3 s4^2 s3 s2 s1");
    CHECK(macro_expand("delta", s5).to_string() == "s1 s2 s3 s4");

    for (int g = 1; g <= 4; ++g) {
        const WordContext ctx = WordContext::surface(g);
        // iota: chain c_{2g+1}..c_1 then c_1..c_{2g+1}
        CHECK(macro_expand("iota", ctx).length() == (g == 1 ? 6u : static_cast<std::size_t>(4 * g + 2)));
        CHECK(macro_expand("lemma44_x", ctx).length() == static_cast<std::size_t>(2 * g));
        CHECK(macro_expand("lemma44_y", ctx).length() == static_cast<std::size_t>(2 * g));
        CHECK(macro_expand("s0", ctx).to_string() == "c1");
        for (int h = 1; h < g; ++h) CHECK(macro_expand("sep", ctx, h).length() == static_cast<std::size_t>(2 * h * (4 * h + 2)));
        CHECK_THROWS_AS(macro_expand("sep", ctx, g), invalid_input);
    }
    CHECK_THROWS_AS(macro_expand("cor14", WordContext::surface(1)), invalid_input);
    CHECK_THROWS_AS(macro_expand("delta", WordContext::surface(2)), invalid_input);
    CHECK_THROWS_AS(macro_expand("nope", s5), invalid_input);
}

TEST_CASE("relation catalog shape") {
    for (int m = 3; m <= 8; ++m) {
        const auto rels = relation_catalog(WordContext::sphere(m));
        // braid (m-2), far commutation C(m-2, 2), deck (m-1), lift, deck order
        const std::size_t far = static_cast<std::size_t>((m - 2) * (m - 3) / 2);
        CHECK(rels.size() == static_cast<std::size_t>(m - 2) + far + static_cast<std::size_t>(m - 1) + 2);
    }
    for (int g = 1; g <= 3; ++g) CHECK_FALSE(relation_catalog(WordContext::surface(g)).empty());
}
