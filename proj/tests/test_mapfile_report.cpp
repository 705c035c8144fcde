#include "test_util.hpp"

using namespace tk;

TEST_CASE("map files parse and round-trip", "[report]") {
    std::string text =
        "# a comment\n"
        "vars: x1 x2\n"
        "F1 = x1 + x2^3   # trailing comment\n"
        "F2 = x2\n";
    MapFile mf = parse_map_text(text);
    CHECK(mf.frame.names() == std::vector<std::string>{"x1", "x2"});
    REQUIRE(mf.components.size() == 2);
    CHECK(mf.components[0].first == "F1");
    CHECK(mf.components[0].second == P("x1 + x2^3", 2));
    CHECK(mf.components[1].second == P("x2", 2));

    std::string out = write_map_text(mf);
    MapFile again = parse_map_text(out);
    CHECK(again.frame == mf.frame);
    CHECK(again.components == mf.components);
}

TEST_CASE("map file errors", "[report]") {
    CHECK_THROWS_AS(parse_map_text("F1 = x1\n"), MapFileError);
    CHECK_THROWS_AS(parse_map_text("vars: x1\nF1 + x1\n"), MapFileError);
    CHECK_THROWS_AS(parse_map_text("vars: x1\nF1 = x2\n"), MapFileError);
    CHECK_THROWS_AS(parse_map_text("vars: x1 x1\nF1 = x1\n"), MapFileError);
    CHECK_THROWS_AS(parse_map_text("vars: x1\n"), MapFileError);
}

TEST_CASE("json reports are canonical and rational-only", "[report]") {
    PropertyReport rep;
    rep.property = "demo";
    rep.instance = "i0";
    rep.verdict = Verdict::Pass;
    rep.witnesses.emplace_back("value", rational_str(rational_of(-3, 2)));
    rep.seed = 7;
    rep.trials = 2;

    RunReport rr;
    rr.command = "demo";
    rr.seed = 7;
    rr.duration_ms = 1234;
    rr.reports.push_back(rep);
    rr.input_digests["in"] = text_digest("payload");

    std::string with = canonical_report_text(rr, true);
    std::string without = canonical_report_text(rr, false);
    CHECK(with.find("duration_ms") != std::string::npos);
    CHECK(without.find("duration_ms") == std::string::npos);
    CHECK(without.find("-3/2") != std::string::npos);
    CHECK(without.find('.') == std::string::npos); // no floating point anywhere

    RunReport other = rr;
    other.duration_ms = 9999;
    CHECK(canonical_report_text(rr) == canonical_report_text(other));
}

TEST_CASE("digests are stable", "[report]") {
    CHECK(text_digest("abc") == text_digest("abc"));
    CHECK(text_digest("abc") != text_digest("abd"));
    CHECK(text_digest("vars: x1\nF1 = x1\n").size() == 16);
}
