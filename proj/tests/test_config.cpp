#include <string>

#include <gtest/gtest.h>

#include "tdldos/config.hpp"

using namespace tdldos;

namespace {

ParseError parse_failure(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no ParseError for:\n" << text;
    return ParseError(0, 0, "none");
}

} // namespace

TEST(ParseConfig, SectionsKeysAndComments) {
    const auto doc = parse_config("# header\n"
                                  "\n"
                                  "[switch]\n"
                                  "gamma0_per_ns = 1   ; baseline\n"
                                  "  tau_sw_ps=35\n"
                                  "[scenario]\n"
                                  "name = \"with # and ; inside\"\n");
    ASSERT_EQ(doc.sections.size(), 2u);
    EXPECT_EQ(doc.sections[0].name, "switch");
    EXPECT_EQ(doc.sections[0].line, 3u);
    ASSERT_EQ(doc.entries.size(), 3u);
    EXPECT_EQ(doc.find("switch", "gamma0_per_ns")->value, "1");
    EXPECT_EQ(doc.find("switch", "tau_sw_ps")->value, "35");
    EXPECT_EQ(doc.find("switch", "tau_sw_ps")->key_column, 3u);
    EXPECT_EQ(doc.find("switch", "tau_sw_ps")->value_column, 13u);
    EXPECT_EQ(doc.find("scenario", "name")->value, "with # and ; inside");
    EXPECT_EQ(doc.find("scenario", "missing"), nullptr);
}

TEST(ParseConfig, EmptyDocument) {
    const auto doc = parse_config("");
    EXPECT_TRUE(doc.sections.empty());
    EXPECT_TRUE(doc.entries.empty());
}

TEST(ParseConfig, CrLfLineEndings) {
    const auto doc = parse_config("[grid]\r\ndt_ps = 0.5\r\n");
    EXPECT_EQ(doc.find("grid", "dt_ps")->value, "0.5");
}

TEST(ParseConfig, Escapes) {
    const auto doc = parse_config("[s]\nk = \"a\\\"b\\\\c\"\n");
    EXPECT_EQ(doc.find("s", "k")->value, "a\"b\\c");
}

TEST(ParseConfig, KeyOutsideSection) {
    const auto e = parse_failure("x = 1\n");
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 1u);
}

TEST(ParseConfig, DuplicateKeyReportsSecondOccurrence) {
    const auto e = parse_failure("[a]\nk = 1\n  k = 2\n");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("duplicate key 'a.k'"), std::string::npos);
}

TEST(ParseConfig, DuplicateSection) {
    const auto e = parse_failure("[a]\n[b]\n[a]\n");
    EXPECT_EQ(e.line(), 3u);
}

TEST(ParseConfig, SyntaxErrorsCarryPosition) {
    EXPECT_EQ(parse_failure("[a]\nkey 1\n").column(), 5u);
    EXPECT_EQ(parse_failure("[a]\nkey =\n").line(), 2u);
    EXPECT_EQ(parse_failure("[a\n").column(), 3u);
    EXPECT_EQ(parse_failure("[]\n").column(), 2u);
    EXPECT_EQ(parse_failure("[a] x\n").column(), 5u);
    EXPECT_EQ(parse_failure("[a]\nKey = 1\n").column(), 1u);
    EXPECT_EQ(parse_failure("[a]\nk = \"open\n").column(), 5u);
    EXPECT_EQ(parse_failure("[a]\nk = \"x\" y\n").column(), 9u);
    EXPECT_EQ(parse_failure("[a]\nk = \"\\n\"\n").line(), 2u);
}

TEST(ParseConfig, MessageMentionsLineAndColumn) {
    const auto e = parse_failure("[a]\n\n= 3\n");
    EXPECT_EQ(std::string(e.what()).rfind("line 3, column 1:", 0), 0u);
}

TEST(ConfigQuote, BareWhenSafe) {
    EXPECT_EQ(config_quote("fig3"), "fig3");
    EXPECT_EQ(config_quote("1e-9"), "1e-9");
}

TEST(ConfigQuote, RoundTripsThroughParser) {
    for (std::string v : {"", " lead", "trail ", "a # b", "x;y", "q\"uote", "back\\slash", "plain words"}) {
        const auto doc = parse_config("[s]\nk = " + config_quote(v) + "\n");
        EXPECT_EQ(doc.find("s", "k")->value, v) << config_quote(v);
    }
}

TEST(ConfigDocument, SetReplacesOrAppends) {
    auto doc = parse_config("[a]\nk = 1\n");
    doc.set("a", "k", "2");
    doc.set("b", "j", "3");
    EXPECT_EQ(doc.find("a", "k")->value, "2");
    EXPECT_TRUE(doc.has_section("b"));
    EXPECT_EQ(doc.find("b", "j")->value, "3");
    EXPECT_EQ(doc.entries.size(), 2u);
}
