#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <cstring>
#include <limits>

#include "xlingmap/text.hpp"

using namespace xlingmap;

TEST_CASE("format_double round-trips bit-exactly") {
    const double cases[] = {0.0,       -0.0,       1.0,    -0.5,         0.1,
                            1e-300,    1e300,      M_PI,   -1.0 / 3.0,   6.02214076e23,
                            0x1p-1074, 0x1.8p+52, 123456.789, -2.2250738585072014e-308};
    for (const double x : cases) {
        const double back = text::parse_double(text::format_double(x), "test");
        CAPTURE(x);
        REQUIRE(std::memcmp(&back, &x, sizeof x) == 0);
    }
}

TEST_CASE("parse_double rejects junk and partial parses") {
    REQUIRE_THROWS_AS(text::parse_double("abc", "t"), Error);
    REQUIRE_THROWS_AS(text::parse_double("1.5x", "t"), Error);
    REQUIRE_THROWS_AS(text::parse_double("", "t"), Error);
    try {
        text::parse_double("nope", "context");
        FAIL("expected throw");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::Parse);
        REQUIRE(std::string(e.what()).find("context") != std::string::npos);
    }
}

TEST_CASE("parse_uint basics") {
    REQUIRE(text::parse_uint("42", "t") == 42);
    REQUIRE(text::parse_uint("0", "t") == 0);
    REQUIRE_THROWS_AS(text::parse_uint("-3", "t"), Error);
    REQUIRE_THROWS_AS(text::parse_uint("3.5", "t"), Error);
}

TEST_CASE("strip_cr removes exactly one trailing carriage return") {
    REQUIRE(text::strip_cr("abc\r") == "abc");
    REQUIRE(text::strip_cr("abc") == "abc");
    REQUIRE(text::strip_cr("abc\r\r") == "abc\r");
    REQUIRE(text::strip_cr("") == "");
}

TEST_CASE("split_ws handles runs of separators") {
    const auto fields = text::split_ws("  a \t b\tcc  ");
    REQUIRE(fields.size() == 3);
    REQUIRE(fields[0] == "a");
    REQUIRE(fields[1] == "b");
    REQUIRE(fields[2] == "cc");
    REQUIRE(text::split_ws("").empty());
    REQUIRE(text::split_ws("   ").empty());
}

TEST_CASE("split_char keeps empty fields") {
    const auto fields = text::split_char("a,,b,", ',');
    REQUIRE(fields.size() == 4);
    REQUIRE(fields[0] == "a");
    REQUIRE(fields[1] == "");
    REQUIRE(fields[2] == "b");
    REQUIRE(fields[3] == "");
}

TEST_CASE("utf8_decode handles ASCII and Cyrillic") {
    REQUIRE(text::utf8_decode("abc") == U"abc");
    const auto word = text::utf8_decode("коза");
    REQUIRE(word.size() == 4);
    REQUIRE(word[0] == U'к');
    REQUIRE(text::utf8_decode("").empty());
    // 4-byte emoji scalar
    REQUIRE(text::utf8_decode("\xf0\x9f\x98\x80").size() == 1);
}

TEST_CASE("utf8_decode rejects malformed input") {
    REQUIRE_THROWS_AS(text::utf8_decode("\xff"), Error);
    REQUIRE_THROWS_AS(text::utf8_decode("\xc3"), Error);          // truncated
    REQUIRE_THROWS_AS(text::utf8_decode("\xc3\x28"), Error);      // bad continuation
    REQUIRE_THROWS_AS(text::utf8_decode("\xc0\xaf"), Error);      // overlong '/'
    REQUIRE_THROWS_AS(text::utf8_decode("\xed\xa0\x80"), Error);  // surrogate
    REQUIRE_THROWS_AS(text::utf8_decode("\x80"), Error);          // stray continuation
}

TEST_CASE("split_lemma_pos splits at the last underscore") {
    auto [lemma, pos] = text::split_lemma_pos("диссертация_S");
    REQUIRE(lemma == "диссертация");
    REQUIRE(pos == "S");
    auto [l2, p2] = text::split_lemma_pos("a_b_V");
    REQUIRE(l2 == "a_b");
    REQUIRE(p2 == "V");
    auto [l3, p3] = text::split_lemma_pos("plain");
    REQUIRE(l3 == "plain");
    REQUIRE(p3.empty());
}

TEST_CASE("csv_escape quotes only when needed") {
    REQUIRE(text::csv_escape("plain") == "plain");
    REQUIRE(text::csv_escape("a,b") == "\"a,b\"");
    REQUIRE(text::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    REQUIRE(text::csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("open_input on a missing path raises an Io error") {
    try {
        text::open_input("/nonexistent/path/file.txt");
        FAIL("expected throw");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::Io);
    }
}
