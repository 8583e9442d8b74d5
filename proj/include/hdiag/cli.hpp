#ifndef HDIAG_CLI_HPP
#define HDIAG_CLI_HPP

// Command-line front end.
//
//   hdiag build          --system S --depth N [--out FILE] [--parent-search M] [--force]
//   hdiag check          TARGET WHAT [--depth N] [--m M] [--path P] [--i-max K]
//                        [--search-depth D] [--report FILE] [--force]
//   hdiag export         TARGET [--depth N] --format dot|json [--out FILE] [--force]
//   hdiag oracle-compare [--system S|all] [--max-level L] [--max-gap G] [--force]
//
// TARGET is a system name (shift | bitwise-not | odometer | zstar, plus
// aliases) or a path to a diagram document. WHAT is one of
// validate | periodicity | em | minimal | straight.
//
// Exit codes: 0 Holds / success, 1 Fails (or validation violations, or oracle
// mismatches), 4 Inconclusive, 2 invalid input or malformed document, 3 I/O
// failure.

#include "analysis.hpp"
#include "construction.hpp"
#include "document.hpp"
#include "partition.hpp"
#include "systems.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hdiag {
namespace cli {

// ---- names, guards, defaults -------------------------------------------------

inline SystemKind parse_system_name(const std::string& name) {
    std::string t;
    t.reserve(name.size());
    for (char c : name) t.push_back(c == '_' ? '-' : char(std::tolower((unsigned char)c)));
    if (t == "shift" || t == "two-sided-shift" || t == "sigma") return SystemKind::Shift;
    if (t == "bitwise-not" || t == "not" || t == "tau") return SystemKind::BitwiseNot;
    if (t == "odometer" || t == "adding-machine" || t == "ad") return SystemKind::Odometer;
    if (t == "zstar" || t == "z-star" || t == "integer-shift") return SystemKind::ZStar;
    throw std::invalid_argument("unknown system \"" + name +
                                "\" (expected shift | bitwise-not | odometer | zstar)");
}

inline bool is_system_name(const std::string& name) {
    try {
        parse_system_name(name);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

// Desk-scale limits: level sizes grow 4x per level for the shift and NOT.
inline int guard_depth(SystemKind k) {
    switch (k) {
        case SystemKind::Shift:
        case SystemKind::BitwiseNot: return 8;
        case SystemKind::Odometer:   return 14;
        case SystemKind::ZStar:      return 200;
    }
    return 8;
}

inline int default_depth(SystemKind k) {
    switch (k) {
        case SystemKind::Shift:
        case SystemKind::BitwiseNot: return 6;
        case SystemKind::Odometer:   return 10;
        case SystemKind::ZStar:      return 12;
    }
    return 6;
}

// Returns false (and explains on `err`) when depth exceeds the guard and
// --force was not given.
inline bool depth_guard_ok(SystemKind k, int depth, bool force, std::ostream& err) {
    int g = guard_depth(k);
    if (depth <= g) return true;
    if (force) {
        err << "warning: depth " << depth << " exceeds the " << system_name(k)
            << " guard (<= " << g << "); proceeding because of --force\n";
        return true;
    }
    err << "depth " << depth << " exceeds the " << system_name(k) << " guard (<= " << g
        << "); pass --force to proceed\n";
    return false;
}

// ---- small helpers --------------------------------------------------------------

namespace detail {

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open for writing: " + path);
    f << text;
    if (!f) throw std::ios_base::failure("write failed: " + path);
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << text;
    else
        detail::write_text_file(out_path, text);
}

inline nlohmann::ordered_json vertex_json(const HDiagram& d, VertexRef v) {
    nlohmann::ordered_json j;
    j["level"] = v.level;
    j["index"] = v.index;
    j["label"] = d.label(v);
    return j;
}

inline nlohmann::ordered_json colors_json(const std::vector<Color>& cs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (Color c : cs) arr.push_back(color_name(c));
    return arr;
}

inline std::string path_str(const BluePathPrefix& p) {
    std::ostringstream s;
    for (std::size_t k = 0; k < p.indices.size(); ++k) {
        if (k) s << " -> ";
        s << k << "/" << p.indices[k];
    }
    return s.str();
}

// Straight columns with one level of persistence horizon, so one-off frontier
// parallels are not mistaken for columns.
inline std::vector<BluePathPrefix> persistent_straight_paths(const HDiagram& d) {
    return straight_paths(d, d.depth() > 0 ? d.depth() - 1 : 0);
}

inline BluePathPrefix parse_path_spec(const HDiagram& d, const std::string& spec) {
    if (spec == "straight") {
        auto paths = persistent_straight_paths(d);
        if (paths.empty())
            throw std::invalid_argument(
                "no straight path exists in this diagram; give --path as comma-separated "
                "vertex indices from level 0 down");
        return paths.front();
    }
    BluePathPrefix p;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad --path entry \"" + tok + "\"");
        }
        if (pos != tok.size())
            throw std::invalid_argument("bad --path entry \"" + tok + "\"");
        p.indices.push_back(std::uint32_t(v));
    }
    if (p.indices.empty()) throw std::invalid_argument("empty --path");
    check_blue_path(d, p);
    return p;
}

// A loaded document whose system tag names one of the canonical systems can
// carry exact semantics — but only if it matches the canonical build of that
// system bit for bit. Otherwise analyses run graph-only.
inline std::optional<PartitionSequence> try_attach_semantics(const HDiagram& d) {
    if (!is_system_name(d.system)) return std::nullopt;
    SystemKind k = parse_system_name(d.system);
    if (d.depth() > guard_depth(k)) return std::nullopt;
    PartitionSequence seq = canonical_sequence(k);
    HDiagram canon = build_diagram(seq, d.depth());
    if (canon.labels != d.labels) return std::nullopt;
    for (std::size_t i = 0; i < canon.levels.size(); ++i)
        if (canon.levels[i].blue_parent != d.levels[i].blue_parent ||
            canon.levels[i].red_parent != d.levels[i].red_parent)
            return std::nullopt;
    return seq;
}

} // namespace detail

// ---- build -----------------------------------------------------------------------

struct BuildOptions {
    std::string system;
    int depth = 1;
    std::string out_path;     // empty = stdout
    bool force = false;
    bool exhaustive = false;  // parent search mode
};

inline int cmd_build(const BuildOptions& o, std::ostream& out, std::ostream& err) {
    SystemKind k = parse_system_name(o.system);
    if (o.depth < 1) {
        err << "build requires --depth >= 1\n";
        return 2;
    }
    if (!depth_guard_ok(k, o.depth, o.force, err)) return 2;
    PartitionSequence seq = canonical_sequence(k);
    HDiagram d = build_diagram(seq, o.depth,
                               o.exhaustive ? ParentSearch::Exhaustive
                                            : ParentSearch::PointLocation);
    detail::emit(to_json_text(d), o.out_path, out);
    return 0;
}

// ---- export ----------------------------------------------------------------------

struct ExportOptions {
    std::string target;       // system name or document path
    int depth = -1;           // -1 = default (system targets only)
    std::string format = "dot";
    std::string out_path;
    bool force = false;
};

inline int cmd_export(const ExportOptions& o, std::ostream& out, std::ostream& err) {
    HDiagram d;
    if (is_system_name(o.target)) {
        SystemKind k = parse_system_name(o.target);
        int depth = o.depth >= 0 ? o.depth : default_depth(k);
        if (!depth_guard_ok(k, depth, o.force, err)) return 2;
        d = build_diagram(canonical_sequence(k), depth);
    } else {
        if (o.depth >= 0) {
            err << "--depth applies only to system targets\n";
            return 2;
        }
        d = load_json_file(o.target);
    }
    if (o.format == "dot")
        detail::emit(to_dot(d), o.out_path, out);
    else
        detail::emit(to_json_text(d), o.out_path, out);
    return 0;
}

// ---- check -----------------------------------------------------------------------

struct CheckOptions {
    std::string target;       // system name or document path
    std::string what;         // validate | periodicity | em | minimal | straight
    int depth = -1;           // -1 = default (system targets only)
    int m = 1;
    std::string path_spec = "straight";
    int i_max = -1;           // -1 = per-check default
    int search_depth = -1;    // -1 = diagram depth
    std::string report_path;  // optional JSON report
    bool force = false;
};

inline int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
    HDiagram d;
    std::optional<PartitionSequence> seq;
    nlohmann::ordered_json rep;
    rep["command"] = "check";
    rep["what"] = o.what;

    if (is_system_name(o.target)) {
        SystemKind k = parse_system_name(o.target);
        int needed = 1;
        if (o.what == "periodicity") {
            if (o.m < 1) {
                err << "--m must be >= 1\n";
                return 2;
            }
            needed = 2 * o.m - 1;
        }
        if (o.search_depth >= 0) needed = std::max(needed, o.search_depth);
        int depth = o.depth >= 0 ? o.depth : std::max(default_depth(k), needed);
        if (!depth_guard_ok(k, depth, o.force, err)) return 2;
        PartitionSequence s = canonical_sequence(k);
        d = build_diagram(s, depth);
        seq = std::move(s);
        rep["target"] = {{"system", system_name(k)}, {"depth", depth}};
    } else {
        d = load_json_file(o.target);
        rep["target"] = {{"path", o.target}, {"depth", d.depth()}};
        auto violations = validate(d);
        if (o.what != "validate" && !violations.empty()) {
            err << "document fails validation (" << violations.size()
                << " violations); run `check " << o.target << " validate`\n";
            return 2;
        }
        if (o.what != "validate") seq = detail::try_attach_semantics(d);
    }

    int code = 0;

    if (o.what == "validate") {
        auto violations = validate(d);
        rep["violations"] = violations;
        if (violations.empty()) {
            out << "document is structurally valid: " << d.depth() + 1 << " levels, "
                << "no violations\n";
            code = 0;
        } else {
            out << violations.size() << " structural violations:\n";
            for (const auto& v : violations) out << "  - " << v << "\n";
            code = 1;
        }
        rep["exit_code"] = code;
    } else if (o.what == "periodicity") {
        if (o.m < 1) {
            err << "--m must be >= 1\n";
            return 2;
        }
        Verdict v = global_periodicity(d, o.m);
        out << "periodicity m=" << o.m << ": " << status_name(v.status) << " — "
            << v.summary << "\n";
        rep["m"] = o.m;
        rep["status"] = status_name(v.status);
        rep["depth_checked"] = v.depth_checked;
        rep["summary"] = v.summary;
        if (v.periodicity_witness) {
            const auto& w = *v.periodicity_witness;
            out << "  witness: from " << w.source.str() << " (" << d.label(w.source)
                << ")\n    colors ";
            for (std::size_t i = 0; i < w.alternating.size(); ++i)
                out << (i ? "," : "") << color_name(w.alternating[i]);
            out << " -> " << w.alternating_end.str() << " (" << d.label(w.alternating_end)
                << ")\n    colors ";
            for (std::size_t i = 0; i < w.blues.size(); ++i)
                out << (i ? "," : "") << color_name(w.blues[i]);
            out << " -> " << w.blue_end.str() << " (" << d.label(w.blue_end) << ")\n";
            nlohmann::ordered_json wj;
            wj["source"] = detail::vertex_json(d, w.source);
            wj["alternating"] = detail::colors_json(w.alternating);
            wj["alternating_end"] = detail::vertex_json(d, w.alternating_end);
            wj["blues"] = detail::colors_json(w.blues);
            wj["blue_end"] = detail::vertex_json(d, w.blue_end);
            rep["witness"] = std::move(wj);
        }
        code = exit_code(v.status);
        rep["exit_code"] = code;
    } else if (o.what == "em") {
        BluePathPrefix path = detail::parse_path_spec(d, o.path_spec);
        int search = o.search_depth >= 0 ? o.search_depth : d.depth();
        int imax = o.i_max >= 0 ? o.i_max : std::min({3, path.depth(), search});
        Verdict v = em_check(d, path, imax, search);
        out << "essential minimality along " << detail::path_str(path) << ":\n";
        for (auto [i, n] : v.em_table)
            out << "  i=" << i << ": level " << n << " is fully connected to "
                << i << "/" << path.indices[std::size_t(i)] << " ("
                << d.label(VertexRef{i, path.indices[std::size_t(i)]}) << ")\n";
        for (int i : v.em_failing)
            out << "  i=" << i << ": no fully-connected level within depth " << search
                << "\n";
        out << status_name(v.status) << " — " << v.summary << "\n";
        rep["i_max"] = imax;
        rep["search_depth"] = search;
        rep["path"] = path.indices;
        rep["status"] = status_name(v.status);
        rep["depth_checked"] = v.depth_checked;
        rep["summary"] = v.summary;
        nlohmann::ordered_json tbl = nlohmann::ordered_json::array();
        for (auto [i, n] : v.em_table) tbl.push_back({{"i", i}, {"n_i", n}});
        rep["table"] = std::move(tbl);
        rep["failing"] = v.em_failing;
        code = exit_code(v.status);
        rep["exit_code"] = code;
    } else if (o.what == "minimal") {
        int search = o.search_depth >= 0 ? o.search_depth : d.depth();
        int imax = o.i_max >= 0 ? o.i_max : std::min(2, search);
        Verdict v = minimality_check(d, imax, search, seq ? &*seq : nullptr);
        out << "minimality over levels 0.." << imax << ":\n";
        for (auto [vref, n] : v.vertex_table)
            out << "  " << vref.str() << " (" << d.label(vref)
                << "): fully connected from level " << n << "\n";
        for (VertexRef vref : v.failing_vertices)
            out << "  " << vref.str() << " (" << d.label(vref)
                << "): no fully-connected level within depth " << search << "\n";
        out << status_name(v.status) << " — " << v.summary << "\n";
        rep["i_max"] = imax;
        rep["search_depth"] = search;
        rep["status"] = status_name(v.status);
        rep["depth_checked"] = v.depth_checked;
        rep["summary"] = v.summary;
        nlohmann::ordered_json tbl = nlohmann::ordered_json::array();
        for (auto [vref, n] : v.vertex_table) {
            nlohmann::ordered_json row = detail::vertex_json(d, vref);
            row["n"] = n;
            tbl.push_back(std::move(row));
        }
        rep["table"] = std::move(tbl);
        nlohmann::ordered_json fail = nlohmann::ordered_json::array();
        for (VertexRef vref : v.failing_vertices)
            fail.push_back(detail::vertex_json(d, vref));
        rep["failing"] = std::move(fail);
        if (v.obstruction) {
            const auto& ob = *v.obstruction;
            nlohmann::ordered_json oj;
            oj["vertex"] = detail::vertex_json(d, ob.vertex);
            if (ob.kind == MinimalityObstruction::Kind::StabilizedUnion) {
                oj["kind"] = "stabilized_union";
                oj["invariant_union"] = print_label(ob.invariant_union);
                oj["stabilized_at"] = ob.stabilized_at;
                out << "  obstruction: orbit union stabilizes at "
                    << print_label(ob.invariant_union) << " (closed once |j| <= "
                    << ob.stabilized_at << "), a proper clopen invariant set\n";
            } else {
                oj["kind"] = "fixed_point_escape";
                oj["straight_path"] = ob.straight.indices;
                nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                out << "  obstruction: straight path " << detail::path_str(ob.straight)
                    << " escapes every orbit union of " << d.label(ob.vertex) << ":\n";
                for (const EscapeRow& r : ob.escape) {
                    out << "    i=" << r.i << " (level " << r.level
                        << "): graph-disconnected="
                        << (r.graph_disconnected ? "yes" : "no")
                        << ", semantically-disjoint="
                        << (r.semantically_disjoint ? "yes" : "no") << "\n";
                    rows.push_back({{"i", r.i},
                                    {"level", r.level},
                                    {"graph_disconnected", r.graph_disconnected},
                                    {"semantically_disjoint", r.semantically_disjoint}});
                }
                oj["rows"] = std::move(rows);
            }
            rep["obstruction"] = std::move(oj);
        }
        code = exit_code(v.status);
        rep["exit_code"] = code;
    } else if (o.what == "straight") {
        auto paths = detail::persistent_straight_paths(d);
        int report_depth = d.depth() > 0 ? d.depth() - 1 : 0;
        out << paths.size() << " straight paths at depth " << report_depth
            << " (persistence horizon: built depth " << d.depth() << ")\n";
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& p : paths) {
            out << "  " << detail::path_str(p) << "  ("
                << d.label(VertexRef{p.depth(), p.indices.back()}) << ")\n";
            arr.push_back(p.indices);
        }
        rep["depth"] = report_depth;
        rep["count"] = paths.size();
        rep["paths"] = std::move(arr);
        code = 0;
        rep["exit_code"] = code;
    } else {
        err << "unknown check \"" << o.what
            << "\" (expected validate | periodicity | em | minimal | straight)\n";
        return 2;
    }

    if (!o.report_path.empty())
        detail::write_text_file(o.report_path, rep.dump(2) + "\n");
    return code;
}

// ---- oracle-compare --------------------------------------------------------------

struct OracleOptions {
    std::string system = "all";
    int max_level = 7;
    int max_gap = 6;
    bool force = false;
};

inline int cmd_oracle_compare(const OracleOptions& o, std::ostream& out,
                              std::ostream& err) {
    std::vector<SystemKind> kinds;
    if (o.system == "all")
        kinds = {SystemKind::Shift, SystemKind::BitwiseNot, SystemKind::Odometer,
                 SystemKind::ZStar};
    else
        kinds = {parse_system_name(o.system)};
    if (o.max_level < 0 || o.max_gap < 0) {
        err << "--max-level and --max-gap must be >= 0\n";
        return 2;
    }
    std::size_t total_mismatches = 0;
    out << "system        top  bottom       pairs  mismatches  result\n";
    for (SystemKind k : kinds) {
        if (!depth_guard_ok(k, o.max_level, o.force, err)) return 2;
        PartitionSequence seq = canonical_sequence(k);
        HDiagram d = build_diagram(seq, o.max_level);
        OracleReport rep = oracle_compare(d, seq, o.max_level, o.max_gap);
        for (const OracleCell& c : rep.cells) {
            std::ostringstream line;
            line << system_name(k);
            std::string pad(line.str().size() < 12 ? 12 - line.str().size() : 1, ' ');
            out << line.str() << pad << std::setw(5) << c.top << std::setw(8) << c.bottom
                << std::setw(12) << c.pairs << std::setw(12) << c.mismatches << "  "
                << (c.mismatches == 0 ? "ok" : "MISMATCH") << "\n";
        }
        total_mismatches += rep.mismatches;
    }
    out << (total_mismatches == 0
                ? "all graph-connectivity answers match the translate oracle\n"
                : "MISMATCHES FOUND: " + std::to_string(total_mismatches) + "\n");
    return total_mismatches == 0 ? 0 : 1;
}

// ---- top-level parser --------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"h-diagram construction and bounded-depth dynamical analysis", "hdiag"};
    app.require_subcommand(1);

    BuildOptions bo;
    CLI::App* build = app.add_subcommand("build", "build a canonical diagram, write JSON");
    build->add_option("--system", bo.system, "shift | bitwise-not | odometer | zstar")
        ->required();
    build->add_option("--depth", bo.depth, "number of level pairs to build")->required();
    build->add_option("--out", bo.out_path, "output file (default: stdout)");
    std::string search_mode = "point";
    build->add_option("--parent-search", search_mode, "point | exhaustive")
        ->check(CLI::IsMember({"point", "exhaustive"}));
    build->add_flag("--force", bo.force, "override the depth guard");

    CheckOptions co;
    CLI::App* check = app.add_subcommand("check", "run a bounded-depth analysis");
    check->add_option("target", co.target, "system name or diagram document path")
        ->required();
    check
        ->add_option("what", co.what,
                     "validate | periodicity | em | minimal | straight")
        ->required();
    check->add_option("--depth", co.depth, "build depth (system targets)");
    check->add_option("--m", co.m, "period to test (periodicity)");
    check->add_option("--path", co.path_spec,
                      "\"straight\" or comma-separated indices from level 0 (em)");
    check->add_option("--i-max", co.i_max, "levels of the table to fill (em, minimal)");
    check->add_option("--search-depth", co.search_depth,
                      "deepest level searched for full connectivity");
    check->add_option("--report", co.report_path, "also write a JSON report here");
    check->add_flag("--force", co.force, "override the depth guard");

    ExportOptions eo;
    CLI::App* exp = app.add_subcommand("export", "render a diagram as DOT or JSON");
    exp->add_option("target", eo.target, "system name or diagram document path")
        ->required();
    exp->add_option("--depth", eo.depth, "build depth (system targets)");
    exp->add_option("--format", eo.format, "dot | json")
        ->check(CLI::IsMember({"dot", "json"}));
    exp->add_option("--out", eo.out_path, "output file (default: stdout)");
    exp->add_flag("--force", eo.force, "override the depth guard");

    OracleOptions oo;
    CLI::App* oc = app.add_subcommand(
        "oracle-compare", "compare graph connectivity with the translate oracle");
    oc->add_option("--system", oo.system, "one system or \"all\" (default)");
    oc->add_option("--max-level", oo.max_level, "deepest level compared (default 7)");
    oc->add_option("--max-gap", oo.max_gap, "largest level gap compared (default 6)");
    oc->add_flag("--force", oo.force, "override the depth guard");

    std::vector<const char*> argv;
    argv.push_back("hdiag");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e, out, err);
        return c == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) {
            bo.exhaustive = (search_mode == "exhaustive");
            return cmd_build(bo, out, err);
        }
        if (check->parsed()) return cmd_check(co, out, err);
        if (exp->parsed()) return cmd_export(eo, out, err);
        if (oc->parsed()) return cmd_oracle_compare(oo, out, err);
    } catch (const std::ios_base::failure& e) {
        err << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand given\n";
    return 2;
}

} // namespace cli
} // namespace hdiag

#endif // HDIAG_CLI_HPP
