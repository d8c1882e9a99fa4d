#include <doctest.h>

#include "lr/meshspec.hpp"
#include "lr/scenarios.hpp"
#include "lr/svg.hpp"
#include "lr/space.hpp"

#include <string>

using namespace lr;

namespace {

int countOccurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("mesh spec parsing") {
    SUBCASE("minimal single-cell spec") {
        LRMesh m = parseMeshSpec("lrspec/1\ndegree 0 0\nxknots 0:1 1:1\nyknots 0:1 1:1\n");
        CHECK(elements(m).size() == 1);
    }
    SUBCASE("comments and blank lines are fine") {
        LRMesh m = parseMeshSpec(
            "# a comment\n"
            "lrspec/1\n"
            "\n"
            "degree 2 2   # bidegree\n"
            "xknots 0:1 1/4:1 1/2:1 3/4:1 1:1 5/4:1\n"
            "yknots 0:1 1/3:1 2/3:1 1:1\n"
            "insert h 11/20 0 3/4\n"
            "insert h 9/20 1/2 5/4\n"
            "insert v 7/12 0 2/3\n"
            "insert v 2/3 1/3 1\n");
        CHECK(elements(m).size() == 29);
        CHECK(dimLr(m) == 9);
    }
    SUBCASE("parse errors carry line and column") {
        try {
            parseMeshSpec("lrspec/1\ndegree 2 2\nxknots 0:1 oops\nyknots 0:1 1:1\n");
            FAIL("expected ParseError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
        CHECK_THROWS_AS(parseMeshSpec(""), Error);
        CHECK_THROWS_AS(parseMeshSpec("lrspec/2\n"), Error);
        CHECK_THROWS_AS(parseMeshSpec("lrspec/1\ndegree 1 1\n"), Error);
    }
    SUBCASE("semantic errors name the insertion index") {
        try {
            parseMeshSpec(
                "lrspec/1\ndegree 1 1\nxknots 0:1 1:1 2:1\nyknots 0:1 1:1 2:1\n"
                "insert v 1/2 0 1\n"       // fine
                "insert h 3/2 1/4 1\n");   // starts mid-element
            FAIL("expected SemanticError");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SemanticError);
            CHECK(std::string(e.what()).find("#2") != std::string::npos);
        }
    }
}

TEST_CASE("mesh spec round-trip") {
    for (const char* name : {"fig7a", "fig8lr", "figpe", "deg34-10", "hh5"}) {
        INFO(name);
        LRMesh m = builtinScenario(name);
        std::string text = serializeMeshSpec(m);
        LRMesh back = parseMeshSpec(text);
        CHECK(back.degree() == m.degree());
        CHECK(back.history().size() == m.history().size());
        for (std::size_t i = 0; i < m.history().size(); ++i) CHECK(back.history()[i] == m.history()[i]);
        CHECK(elements(back) == elements(m));
        CHECK(serializeMeshSpec(back) == text);  // serialize-parse-serialize is stable
    }
    SUBCASE("multiplicities survive") {
        LRMesh m = newTensorMesh({{Rational(0), 3}, {Rational(1), 2}, {Rational(2), 3}},
                                 {{Rational(0), 3}, {Rational(1), 1}, {Rational(2), 3}}, Degree{2, 2});
        m = insertSplit(m, SplitSpec{Axis::Vertical, Rational(1), Interval{Rational(0), Rational(2)}, 1});
        LRMesh back = parseMeshSpec(serializeMeshSpec(m));
        CHECK(back.multAt(Axis::Vertical, Rational(1), Rational(1)) == 3);
    }
}

TEST_CASE("scenario registry") {
    CHECK(scenarioList().size() == 21);
    CHECK_THROWS_AS(builtinScenario("nonesuch"), Error);
    for (const ScenarioInfo& s : scenarioList()) CHECK_NOTHROW(builtinScenario(s.name));
}

TEST_CASE("svg rendering") {
    LRMesh m = builtinScenario("fig7a");
    SUBCASE("deterministic output, one line element per meshline") {
        std::string a = renderSvg(m);
        std::string b = renderSvg(m);
        CHECK(a == b);
        CHECK(countOccurrences(a, "<line ") == static_cast<int>(meshlines(m).size()));
        CHECK(a.find("<script") == std::string::npos);
    }
    SUBCASE("support overlays shade one rect per support") {
        SvgOverlays ov;
        for (int i = 0; i < 6; ++i)
            ov.circuit.push_back(Rect{Interval{Rational(0), Rational(1)}, Interval{Rational(0), Rational(1)}});
        std::string s = renderSvg(m, ov);
        CHECK(countOccurrences(s, "<rect ") == 6);
    }
    SUBCASE("vertex marks are opt-in") {
        SvgOverlays ov;
        ov.vertexMarks = true;
        std::string s = renderSvg(m, ov);
        CHECK(countOccurrences(s, "<circle ") > 0);
        CHECK(renderSvg(m).find("<circle ") == std::string::npos);
    }
}
