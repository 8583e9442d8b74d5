#ifndef HDIAG_DOCUMENT_HPP
#define HDIAG_DOCUMENT_HPP

// On-disk forms of a diagram:
//
//   JSON document  — complete description (labels + both parent maps), with a
//                    fixed key order so save/load/save is byte-identical.
//   DOT export     — Graphviz rendering, deterministic output.
//
// The loader checks well-formedness only: shape, types, array lengths, and
// parent indices in range. Whether the loaded diagram satisfies the structural
// laws (surjectivity, size chain, rhombus identity) is validate()'s job, so a
// malformed file and a well-formed-but-invalid diagram are distinguishable.

#include "diagram.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hdiag {

inline constexpr const char* kDocumentFormat = "hdiagram/1";

// ---- JSON ---------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const HDiagram& d) {
    nlohmann::ordered_json doc;
    doc["format"] = kDocumentFormat;
    doc["system"] = d.system;
    doc["parity_convention"] = d.parity_convention;
    doc["levels"] = nlohmann::ordered_json::array();
    for (int lvl = 0; lvl <= d.depth(); ++lvl) {
        nlohmann::ordered_json entry;
        entry["labels"] = d.labels[std::size_t(lvl)];
        if (lvl >= 1) {
            const DiagramLevel& L = d.levels[std::size_t(lvl - 1)];
            entry["blue_parent"] = L.blue_parent;
            entry["red_parent"] = L.red_parent;
        }
        doc["levels"].push_back(std::move(entry));
    }
    return doc;
}

inline std::string to_json_text(const HDiagram& d) { return to_json(d).dump(2) + "\n"; }

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) {
    throw std::runtime_error("malformed diagram document: " + what);
}

inline std::vector<std::uint32_t> parse_parent_array(const nlohmann::json& j,
                                                     const char* key, std::size_t lvl,
                                                     std::size_t expect_len,
                                                     std::size_t upper_size) {
    if (!j.contains(key) || !j[key].is_array())
        malformed("level " + std::to_string(lvl) + " lacks array \"" + key + "\"");
    const auto& arr = j[key];
    if (arr.size() != expect_len)
        malformed("level " + std::to_string(lvl) + " \"" + key + "\" length " +
                  std::to_string(arr.size()) + " != label count " +
                  std::to_string(expect_len));
    std::vector<std::uint32_t> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_number_unsigned())
            malformed("level " + std::to_string(lvl) + " \"" + key +
                      "\" entry is not an unsigned integer");
        std::uint64_t v = e.get<std::uint64_t>();
        if (v >= upper_size)
            malformed("level " + std::to_string(lvl) + " \"" + key + "\" index " +
                      std::to_string(v) + " out of range (upper level has " +
                      std::to_string(upper_size) + " vertices)");
        out.push_back(std::uint32_t(v));
    }
    return out;
}

} // namespace detail

// Rebuild a diagram from its JSON form. Throws std::runtime_error on any
// structural defect; theory-level violations are left to validate().
inline HDiagram from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) detail::malformed("root is not an object");
    if (!doc.contains("format") || !doc["format"].is_string() ||
        doc["format"].get<std::string>() != kDocumentFormat)
        detail::malformed("missing or unsupported \"format\" tag (want \"" +
                          std::string(kDocumentFormat) + "\")");
    if (!doc.contains("system") || !doc["system"].is_string())
        detail::malformed("missing string \"system\"");
    if (!doc.contains("parity_convention") || !doc["parity_convention"].is_string())
        detail::malformed("missing string \"parity_convention\"");
    if (!doc.contains("levels") || !doc["levels"].is_array() || doc["levels"].empty())
        detail::malformed("missing non-empty array \"levels\"");

    HDiagram d;
    d.system = doc["system"].get<std::string>();
    d.parity_convention = doc["parity_convention"].get<std::string>();
    const auto& levels = doc["levels"];
    for (std::size_t lvl = 0; lvl < levels.size(); ++lvl) {
        const auto& entry = levels[lvl];
        if (!entry.is_object())
            detail::malformed("level " + std::to_string(lvl) + " is not an object");
        if (!entry.contains("labels") || !entry["labels"].is_array() ||
            entry["labels"].empty())
            detail::malformed("level " + std::to_string(lvl) +
                              " lacks non-empty array \"labels\"");
        std::vector<std::string> labs;
        labs.reserve(entry["labels"].size());
        for (const auto& e : entry["labels"]) {
            if (!e.is_string())
                detail::malformed("level " + std::to_string(lvl) +
                                  " label is not a string");
            labs.push_back(e.get<std::string>());
        }
        if (lvl == 0) {
            if (entry.contains("blue_parent") || entry.contains("red_parent"))
                detail::malformed("level 0 must not carry parent arrays");
            d.labels.push_back(std::move(labs));
            continue;
        }
        std::size_t upper = d.labels[lvl - 1].size();
        DiagramLevel L;
        L.upper_size = std::uint32_t(upper);
        L.lower_size = std::uint32_t(labs.size());
        L.blue_parent =
            detail::parse_parent_array(entry, "blue_parent", lvl, labs.size(), upper);
        L.red_parent =
            detail::parse_parent_array(entry, "red_parent", lvl, labs.size(), upper);
        d.labels.push_back(std::move(labs));
        d.levels.push_back(std::move(L));
    }
    return d;
}

inline HDiagram from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        detail::malformed(std::string("not valid JSON: ") + e.what());
    }
    return from_json(doc);
}

// ---- file I/O -------------------------------------------------------------------

inline void save_json_file(const HDiagram& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
    out << to_json_text(d);
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

inline HDiagram load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("read failed: " + path);
    return from_json_text(buf.str());
}

// ---- DOT ------------------------------------------------------------------------

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace detail

// Deterministic Graphviz form: levels as same-rank rows, level 0 at the top,
// blue edges solid and red edges dashed, each drawn child -> parent.
inline std::string to_dot(const HDiagram& d) {
    std::ostringstream out;
    out << "digraph hdiagram {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=box, fontsize=10];\n";
    for (int lvl = 0; lvl <= d.depth(); ++lvl) {
        out << "  { rank=same;";
        for (std::uint32_t i = 0; i < d.size(lvl); ++i)
            out << " \"" << lvl << "/" << i << "\"";
        out << " }\n";
        for (std::uint32_t i = 0; i < d.size(lvl); ++i)
            out << "  \"" << lvl << "/" << i << "\" [label=\""
                << detail::dot_escape(d.label(VertexRef{lvl, i})) << "\"];\n";
    }
    for (int lvl = 1; lvl <= d.depth(); ++lvl)
        for (std::uint32_t i = 0; i < d.size(lvl); ++i) {
            out << "  \"" << lvl << "/" << i << "\" -> \"" << (lvl - 1) << "/"
                << d.parent(lvl, i, Color::Blue) << "\" [color=blue];\n";
            out << "  \"" << lvl << "/" << i << "\" -> \"" << (lvl - 1) << "/"
                << d.parent(lvl, i, Color::Red)
                << "\" [color=red, style=dashed];\n";
        }
    out << "}\n";
    return out.str();
}

inline void save_dot_file(const HDiagram& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
    out << to_dot(d);
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

} // namespace hdiag

#endif // HDIAG_DOCUMENT_HPP
