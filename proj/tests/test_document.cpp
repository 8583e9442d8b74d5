// Serialization: JSON documents must round-trip byte-identically, loading
// must reject every class of structural defect with a clear message while
// leaving theory-level violations to validate(), and the DOT export must be
// deterministic with the pinned shape.

#include <catch2/catch_amalgamated.hpp>

#include <hdiag/construction.hpp>
#include <hdiag/document.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace hdiag;

namespace {

HDiagram build(SystemKind kind, int depth) {
    return build_diagram(canonical_sequence(kind), depth);
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + needle.size()))
        ++n;
    return n;
}

// parse -> mutate -> dump, so each defect is injected into otherwise-valid text
std::string mutate(const std::string& text,
                   const std::function<void(nlohmann::json&)>& f) {
    nlohmann::json doc = nlohmann::json::parse(text);
    f(doc);
    return doc.dump();
}

void require_malformed(const std::string& text, const std::string& fragment) {
    try {
        from_json_text(text);
        FAIL("expected rejection: " << fragment);
    } catch (const std::runtime_error& e) {
        std::string what = e.what();
        INFO(what);
        REQUIRE(what.find("malformed diagram document:") == 0);
        REQUIRE(what.find(fragment) != std::string::npos);
    }
}

} // namespace

TEST_CASE("JSON round-trips are byte-identical") {
    for (SystemKind kind : {SystemKind::Shift, SystemKind::BitwiseNot,
                            SystemKind::Odometer, SystemKind::ZStar}) {
        HDiagram d = build(kind, 4);
        std::string text = to_json_text(d);
        HDiagram back = from_json_text(text);
        INFO(system_name(kind));
        REQUIRE(to_json_text(back) == text);
        REQUIRE(back.system == d.system);
        REQUIRE(back.parity_convention == d.parity_convention);
        REQUIRE(back.labels == d.labels);
        REQUIRE(back.depth() == d.depth());
        for (int n = 0; n < d.depth(); ++n) {
            REQUIRE(back.levels[std::size_t(n)].blue_parent ==
                    d.levels[std::size_t(n)].blue_parent);
            REQUIRE(back.levels[std::size_t(n)].red_parent ==
                    d.levels[std::size_t(n)].red_parent);
        }
        REQUIRE(validate(back).empty());
    }
}

TEST_CASE("document shape") {
    HDiagram d = build(SystemKind::Shift, 2);
    std::string text = to_json_text(d);
    REQUIRE(text.rfind("{\n  \"format\": \"hdiagram/1\"", 0) == 0);
    REQUIRE(text.back() == '\n');
    nlohmann::json doc = nlohmann::json::parse(text);
    REQUIRE(doc["system"] == "shift");
    REQUIRE(doc["levels"].size() == 3);
    REQUIRE_FALSE(doc["levels"][0].contains("blue_parent"));
    REQUIRE(doc["levels"][2]["labels"].size() == 8);
    REQUIRE(doc["levels"][2]["red_parent"].size() == 8);
}

TEST_CASE("every class of malformed document is rejected") {
    std::string good = to_json_text(build(SystemKind::Shift, 2));
    REQUIRE_NOTHROW(from_json_text(good));

    require_malformed("{ not json", "not valid JSON");
    require_malformed("[1, 2]", "root is not an object");
    require_malformed(mutate(good, [](auto& j) { j.erase("format"); }),
                      "\"format\"");
    require_malformed(mutate(good, [](auto& j) { j["format"] = "hdiagram/9"; }),
                      "\"format\"");
    require_malformed(mutate(good, [](auto& j) { j.erase("system"); }),
                      "missing string \"system\"");
    require_malformed(mutate(good, [](auto& j) { j["system"] = 7; }),
                      "missing string \"system\"");
    require_malformed(mutate(good, [](auto& j) { j.erase("parity_convention"); }),
                      "missing string \"parity_convention\"");
    require_malformed(mutate(good, [](auto& j) { j.erase("levels"); }),
                      "missing non-empty array \"levels\"");
    require_malformed(mutate(good, [](auto& j) { j["levels"] = nlohmann::json::array(); }),
                      "missing non-empty array \"levels\"");
    require_malformed(mutate(good, [](auto& j) { j["levels"][1] = 3; }),
                      "level 1 is not an object");
    require_malformed(mutate(good, [](auto& j) { j["levels"][1].erase("labels"); }),
                      "level 1 lacks non-empty array \"labels\"");
    require_malformed(
        mutate(good, [](auto& j) { j["levels"][1]["labels"] = nlohmann::json::array(); }),
        "level 1 lacks non-empty array \"labels\"");
    require_malformed(mutate(good, [](auto& j) { j["levels"][1]["labels"][0] = 1; }),
                      "label is not a string");
    require_malformed(
        mutate(good, [](auto& j) { j["levels"][0]["blue_parent"] = {0}; }),
        "level 0 must not carry parent arrays");
    require_malformed(mutate(good, [](auto& j) { j["levels"][2].erase("red_parent"); }),
                      "lacks array \"red_parent\"");
    require_malformed(
        mutate(good, [](auto& j) { j["levels"][2]["blue_parent"] = {0, 1}; }),
        "length 2 != label count 8");
    require_malformed(
        mutate(good, [](auto& j) { j["levels"][2]["red_parent"][3] = -1; }),
        "entry is not an unsigned integer");
    require_malformed(
        mutate(good, [](auto& j) { j["levels"][2]["red_parent"][3] = "x"; }),
        "entry is not an unsigned integer");
    require_malformed(
        mutate(good, [](auto& j) { j["levels"][2]["red_parent"][3] = 2; }),
        "index 2 out of range (upper level has 2 vertices)");
}

TEST_CASE("loading checks structure only; theory violations are validate()'s job") {
    std::string good = to_json_text(build(SystemKind::Shift, 3));
    // reroute one red edge: still a perfectly well-formed document...
    std::string doctored =
        mutate(good, [](auto& j) { j["levels"][3]["red_parent"][0] = 1; });
    HDiagram d = from_json_text(doctored);
    REQUIRE(d.levels[2].red_parent[0] == 1);
    // ...but no longer a valid h-diagram: blue-blue and red-red from the
    // all-zero level-3 block now land on different level-1 blocks
    std::vector<std::string> violations = validate(d);
    REQUIRE_FALSE(violations.empty());
    bool rhombus = false;
    for (const std::string& v : violations)
        if (v.find("rhombus") != std::string::npos) rhombus = true;
    REQUIRE(rhombus);
}

TEST_CASE("file round-trip and I/O failures") {
    namespace fs = std::filesystem;
    HDiagram d = build(SystemKind::ZStar, 3);
    fs::path tmp = fs::temp_directory_path() / "hdiag_test_document.json";
    save_json_file(d, tmp.string());
    std::ifstream in(tmp, std::ios::binary);
    std::string on_disk((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    REQUIRE(on_disk == to_json_text(d));
    HDiagram back = load_json_file(tmp.string());
    REQUIRE(to_json_text(back) == to_json_text(d));
    fs::remove(tmp);

    REQUIRE_THROWS_AS(load_json_file("/nonexistent/dir/diagram.json"),
                      std::ios_base::failure);
    REQUIRE_THROWS_AS(save_json_file(d, "/nonexistent/dir/diagram.json"),
                      std::ios_base::failure);
}

TEST_CASE("DOT export is deterministic with the pinned shape") {
    HDiagram d = build(SystemKind::Shift, 2);
    std::string dot = to_dot(d);
    REQUIRE(dot.rfind("digraph hdiagram {", 0) == 0);
    REQUIRE(dot.find("rankdir=BT;") != std::string::npos);
    REQUIRE(count_occurrences(dot, "[label=") == 11);     // 1 + 2 + 8 vertices
    REQUIRE(count_occurrences(dot, " -> ") == 20);        // 2 * (2 + 8) edges
    REQUIRE(count_occurrences(dot, "[color=blue]") == 10);
    REQUIRE(count_occurrences(dot, "[color=red, style=dashed]") == 10);
    REQUIRE(count_occurrences(dot, "rank=same") == 3);
    REQUIRE(dot.find("\"2/0\" -> \"1/0\" [color=blue];") != std::string::npos);
    REQUIRE(dot.find("[label=\"0[0]1\"]") != std::string::npos);
    REQUIRE(to_dot(d) == dot);
    REQUIRE(to_dot(from_json_text(to_json_text(d))) == dot);

    HDiagram z = build(SystemKind::ZStar, 4);
    std::string zdot = to_dot(z);
    REQUIRE(count_occurrences(zdot, "[label=") == 21); // 1+2+4+6+8
    REQUIRE(count_occurrences(zdot, " -> ") == 40);    // 2 * (2+4+6+8)
    REQUIRE(zdot.find("[label=\"V(3)\"]") != std::string::npos);
}

TEST_CASE("DOT labels are escaped") {
    HDiagram d;
    d.system = "external";
    d.parity_convention = "even-forward";
    d.labels = {{R"(a"b\c)"}};
    std::string dot = to_dot(d);
    REQUIRE(dot.find(R"([label="a\"b\\c"])") != std::string::npos);
}

TEST_CASE("DOT files are written and failures reported") {
    namespace fs = std::filesystem;
    HDiagram d = build(SystemKind::Odometer, 2);
    fs::path tmp = fs::temp_directory_path() / "hdiag_test_document.dot";
    save_dot_file(d, tmp.string());
    std::ifstream in(tmp, std::ios::binary);
    std::string on_disk((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    REQUIRE(on_disk == to_dot(d));
    fs::remove(tmp);
    REQUIRE_THROWS_AS(save_dot_file(d, "/nonexistent/dir/diagram.dot"),
                      std::ios_base::failure);
}
