// Acceptance gate: twelve end-to-end criteria, one pass/fail line each.
// Exits nonzero if any criterion fails. Everything here goes through the
// public headers exactly as a user would.

#include <hdiag/analysis.hpp>
#include <hdiag/construction.hpp>
#include <hdiag/document.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hdiag;

namespace {

void expect(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

// diagrams are reused across criteria; failures still surface inside the
// criterion that asked for the build
std::map<std::pair<int, int>, HDiagram> g_diagrams;

const HDiagram& diagram(SystemKind k, int depth) {
    auto key = std::make_pair(int(k), depth);
    auto it = g_diagrams.find(key);
    if (it == g_diagrams.end())
        it = g_diagrams.emplace(key, build_diagram(canonical_sequence(k), depth)).first;
    return it->second;
}

constexpr SystemKind kAll[] = {SystemKind::Shift, SystemKind::BitwiseNot,
                               SystemKind::Odometer, SystemKind::ZStar};

int guard_depth_of(SystemKind k) {
    switch (k) {
        case SystemKind::Shift:
        case SystemKind::BitwiseNot: return 8;
        case SystemKind::Odometer:   return 14;
        case SystemKind::ZStar:      return 200;
    }
    return 8;
}

// ---- tiny word helpers for the random-set suite ---------------------------------

std::vector<std::string> words_of_length(int len) {
    std::vector<std::string> out;
    out.reserve(std::size_t(1) << len);
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
        std::string w(std::size_t(len), '0');
        for (int p = 0; p < len; ++p)
            if (v & (std::uint64_t(1) << p)) w[std::size_t(len - 1 - p)] = '1';
        out.push_back(std::move(w));
    }
    return out;
}

ClopenSet random_cylinder_set(std::mt19937& rng, Backend b) {
    std::uniform_int_distribution<int> win(0, 4);
    int w = win(rng);
    int len = (b == Backend::TwoSided) ? 2 * w + 1 : w;
    std::vector<std::string> ws;
    std::bernoulli_distribution keep(0.4);
    for (const std::string& word : words_of_length(len))
        if (keep(rng)) ws.push_back(word);
    return (b == Backend::TwoSided) ? ClopenSet::two_sided(w, std::move(ws))
                                    : ClopenSet::one_sided(len, std::move(ws));
}

void replay_witness(const HDiagram& d, const Verdict& v, const std::string& tag) {
    expect(v.status == Status::Fails, tag + ": expected Fails");
    expect(v.periodicity_witness.has_value(), tag + ": no witness attached");
    const PeriodicityWitness& w = *v.periodicity_witness;
    expect(ancestor(d, w.source, w.alternating) == w.alternating_end,
           tag + ": alternating replay does not land on the stored endpoint");
    expect(ancestor(d, w.source, w.blues) == w.blue_end,
           tag + ": blue replay does not land on the stored endpoint");
    expect(w.alternating_end != w.blue_end,
           tag + ": witness endpoints coincide, refuting nothing");
}

// ---- harness ---------------------------------------------------------------------

int g_passed = 0;
int g_failed = 0;

void criterion(int no, const std::string& title,
               const std::function<std::string()>& body) {
    std::string note;
    bool ok = true;
    std::string reason;
    try {
        note = body();
    } catch (const std::exception& e) {
        ok = false;
        reason = e.what();
    }
    std::ostringstream line;
    line << "[" << (no < 10 ? " " : "") << no << "/12] " << (ok ? "PASS" : "FAIL")
         << "  " << title;
    if (ok && !note.empty()) line << " (" << note << ")";
    if (!ok) line << " — " << reason;
    std::cout << line.str() << "\n" << std::flush;
    (ok ? g_passed : g_failed) += 1;
}

} // namespace

int main() {
    criterion(1, "figure-exact shift construction at depth 3", [] {
        const HDiagram& d = diagram(SystemKind::Shift, 3);
        expect(d.size(0) == 1 && d.size(1) == 2 && d.size(2) == 8,
               "level sizes are not [1,2,8]");
        for (std::uint32_t idx = 0; idx < 8; ++idx) {
            // level-2 word e-1 e0 e1 in index order; red must route on e1
            expect(d.parent(2, idx, Color::Red) == (idx & 1u),
                   "red edge of level-2 vertex " + std::to_string(idx) +
                       " does not land on its right symbol");
        }
        return std::string("sizes [1,2,8]; all 8 red edges route on the right symbol");
    });

    criterion(2, "vertex counts follow the closed forms", [] {
        const HDiagram& sh = diagram(SystemKind::Shift, 8);
        for (int n = 1; n <= 4; ++n)
            expect(sh.size(n) == (std::uint32_t(1) << (2 * n - 1)),
                   "shift level " + std::to_string(n) + " size is not 2^(2n-1)");
        const HDiagram& od = diagram(SystemKind::Odometer, 14);
        for (int n = 0; n <= 10; ++n)
            expect(od.size(n) == (std::uint32_t(1) << n),
                   "odometer level " + std::to_string(n) + " size is not 2^n");
        const HDiagram& zs = diagram(SystemKind::ZStar, 200);
        for (int n = 1; n <= 50; ++n)
            expect(zs.size(n) == std::uint32_t(2 * n),
                   "zstar level " + std::to_string(n) + " size is not 2n");
        std::size_t edge_pairs = 0;
        for (SystemKind k : kAll) {
            const HDiagram& d = diagram(k, guard_depth_of(k));
            for (int n = 0; n < d.depth(); ++n) {
                const DiagramLevel& L = d.levels[std::size_t(n)];
                expect(L.blue_parent.size() == d.size(n + 1) &&
                           L.red_parent.size() == d.size(n + 1),
                       "edge count at a level pair is not twice the lower level");
                ++edge_pairs;
            }
        }
        return "shift 2^(2n-1), odometer 2^n, zstar 2n; |edges| = 2|lower| at " +
               std::to_string(edge_pairs) + " level pairs";
    });

    criterion(3, "rhombus identity on all four diagrams at guard depth", [] {
        std::size_t checked = 0;
        for (SystemKind k : kAll) {
            const HDiagram& d = diagram(k, guard_depth_of(k));
            for (int lvl = 2; lvl <= d.depth(); ++lvl)
                for (std::uint32_t w = 0; w < d.size(lvl); ++w) {
                    std::uint32_t bb = d.parent(lvl - 1, d.parent(lvl, w, Color::Blue),
                                                Color::Blue);
                    std::uint32_t rr = d.parent(lvl - 1, d.parent(lvl, w, Color::Red),
                                                Color::Red);
                    expect(bb == rr, std::string(system_name(k)) +
                                         ": blue-blue and red-red diverge at level " +
                                         std::to_string(lvl) + " vertex " +
                                         std::to_string(w));
                    ++checked;
                }
        }
        return std::to_string(checked) + " rhombi closed";
    });

    criterion(4, "graph connectivity matches the translate oracle exhaustively", [] {
        auto t0 = std::chrono::steady_clock::now();
        std::size_t pairs = 0;
        for (SystemKind k : kAll) {
            PartitionSequence seq = canonical_sequence(k);
            const HDiagram& d = diagram(k, 7);
            OracleReport rep = oracle_compare(d, seq, 7, 6);
            expect(rep.mismatches == 0,
                   std::string(system_name(k)) + ": " +
                       std::to_string(rep.mismatches) + " mismatching vertex pairs");
            pairs += rep.pairs;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                    t0).count();
        expect(secs <= 60.0, "comparison exceeded the 60 s budget");
        std::ostringstream n;
        n << pairs << " vertex pairs, all gaps <= 6, levels <= 7, in " << std::fixed
          << std::setprecision(1) << secs << " s";
        return n.str();
    });

    criterion(5, "W-set unions agree graph-side and semantics-side", [] {
        std::size_t compared = 0;
        for (SystemKind k : kAll) {
            PartitionSequence seq = canonical_sequence(k);
            const HDiagram& d = diagram(k, 7);
            for (int m = 0; m <= 3; ++m)
                for (std::uint32_t idx = 0; idx < d.size(m); ++idx)
                    for (int i = 0; i <= 2; ++i) {
                        WSets w = w_set(d, seq, VertexRef{m, idx}, i);
                        expect(w.graph_union == w.semantic_union,
                               std::string(system_name(k)) + ": W(" +
                                   d.label(VertexRef{m, idx}) + "; " +
                                   std::to_string(m) + ", " + std::to_string(i) +
                                   ") differs between the two sides");
                        ++compared;
                    }
        }
        return std::to_string(compared) + " unions compared at m <= 3, i <= 2";
    });

    criterion(6, "global periodicity verdicts with replayable witnesses", [] {
        const HDiagram& nt = diagram(SystemKind::BitwiseNot, 6);
        Verdict holds = global_periodicity(nt, 2);
        expect(holds.status == Status::Holds, "NOT at m=2 should hold to depth 6");
        replay_witness(nt, global_periodicity(nt, 1), "NOT m=1");

        const HDiagram& sh = diagram(SystemKind::Shift, 6);
        for (int m : {1, 2, 3})
            replay_witness(sh, global_periodicity(sh, m),
                           "shift m=" + std::to_string(m));

        const HDiagram& zs = diagram(SystemKind::ZStar, 8);
        for (int m : {1, 2})
            replay_witness(zs, global_periodicity(zs, m),
                           "zstar m=" + std::to_string(m));
        return std::string("NOT m=2 Holds; NOT m=1, shift m=1..3, zstar m=1..2 "
                           "Fails with verified witnesses");
    });

    criterion(7, "essential minimality of the integer shift within n_i <= 3i+3", [] {
        const HDiagram& d = diagram(SystemKind::ZStar, 12);
        BluePathPrefix vchain;
        vchain.indices.push_back(0);
        for (int n = 1; n <= 12; ++n)
            vchain.indices.push_back(std::uint32_t(2 * n - 1));
        Verdict v = em_check(d, vchain, 3, 12);
        expect(v.status == Status::Holds, "em along the tail column should hold");
        expect(v.em_table.size() == 4, "table does not cover i = 0..3");
        std::ostringstream found;
        for (auto [i, n] : v.em_table) {
            expect(n <= 3 * i + 3, "n_" + std::to_string(i) + " = " +
                                       std::to_string(n) + " exceeds 3i+3");
            found << (i ? ", " : "") << "n_" << i << "=" << n;
        }
        return "Holds; " + found.str() + "; all within 3i+3";
    });

    criterion(8, "odometer minimality within the doubling bound", [] {
        PartitionSequence seq = canonical_sequence(SystemKind::Odometer);
        const HDiagram& d = diagram(SystemKind::Odometer, 9);
        Verdict v = minimality_check(d, 2, 9, &seq);
        expect(v.status == Status::Holds, "odometer minimality should hold");
        for (auto [vert, n] : v.vertex_table) {
            if (vert.level == 1)
                expect(n <= 3, "level-1 vertex fully connects only at level " +
                                   std::to_string(n) + " > 3");
            if (vert.level == 2)
                expect(n <= 8, "level-2 vertex fully connects only at level " +
                                   std::to_string(n) + " > 8");
        }
        return "Holds for i_max=2, search depth 9; level-1 <= 3, level-2 <= 8";
    });

    criterion(9, "shift non-minimality with a verified escape certificate", [] {
        PartitionSequence seq = canonical_sequence(SystemKind::Shift);
        const HDiagram& d = diagram(SystemKind::Shift, 9);
        Verdict v = minimality_check(d, 1, 9, &seq);
        expect(v.status == Status::Fails, "shift minimality should fail");
        expect(v.obstruction.has_value(), "no certificate attached");
        const MinimalityObstruction& obs = *v.obstruction;
        expect(obs.kind == MinimalityObstruction::Kind::FixedPointEscape,
               "expected a fixed-point escape certificate");
        expect(obs.vertex == VertexRef{1, 0} && d.label(obs.vertex) == "[0]",
               "certificate is not about the block [0]");
        std::string bottom = d.label(VertexRef{9, obs.straight.indices.back()});
        expect(bottom.find('0') == std::string::npos,
               "escaping column is not the all-ones fixed point");
        expect(obs.escape.size() == 5, "certificate does not cover i = 0..4");
        for (const EscapeRow& r : obs.escape) {
            expect(r.graph_disconnected,
                   "row i=" + std::to_string(r.i) + " not graph-disconnected");
            expect(r.semantically_disjoint,
                   "row i=" + std::to_string(r.i) + " meets the orbit union");
        }
        return "Fails; the all-ones column escapes every orbit union of [0] "
               "for i <= 4, both graph-side and semantically";
    });

    criterion(10, "straight-path census: 2 shift columns, 1 integer tail, 0 for NOT",
              [] {
                  auto sp = [](SystemKind k) {
                      return straight_paths(diagram(k, 5), 4);
                  };
                  auto shift = sp(SystemKind::Shift);
                  expect(shift.size() == 2, "shift should have exactly 2 at depth 4");
                  expect(shift[0].indices ==
                             std::vector<std::uint32_t>{0, 0, 0, 0, 0},
                         "first shift column is not the all-zeros chain");
                  expect(shift[1].indices ==
                             std::vector<std::uint32_t>{0, 1, 7, 31, 127},
                         "second shift column is not the all-ones chain");
                  auto zs = sp(SystemKind::ZStar);
                  expect(zs.size() == 1, "zstar should have exactly 1 at depth 4");
                  expect(zs[0].indices == std::vector<std::uint32_t>{0, 1, 3, 5, 7},
                         "zstar straight path is not the tail-block chain");
                  expect(diagram(SystemKind::ZStar, 5).label(VertexRef{4, 7}) == "V(3)",
                         "zstar chain bottom is not the tail block");
                  expect(sp(SystemKind::BitwiseNot).empty(),
                         "NOT should have no straight path beyond level 0");
                  return std::string("shift {all-0, all-1}; zstar {V-chain}; NOT {}");
              });

    criterion(11, "random-set algebra, involution, and odometer transitivity", [] {
        std::mt19937 rng(20260819u);
        const int probe = 6;
        auto member = [&](const ClopenSet& z, const std::string& w) {
            return z.member_word(w, probe);
        };
        for (Backend b : {Backend::TwoSided, Backend::OneSided}) {
            std::vector<std::string> probes =
                words_of_length(b == Backend::TwoSided ? 2 * probe + 1 : probe);
            for (int trial = 0; trial < 200; ++trial) {
                ClopenSet a = random_cylinder_set(rng, b);
                ClopenSet c = random_cylinder_set(rng, b);
                ClopenSet both = intersect(a, c);
                ClopenSet either = unite(a, c);
                bool nonempty = false;
                for (const std::string& w : probes) {
                    bool ma = member(a, w), mc = member(c, w);
                    expect(member(both, w) == (ma && mc),
                           "intersection membership law fails");
                    expect(member(either, w) == (ma || mc),
                           "union membership law fails");
                    nonempty = nonempty || member(both, w);
                }
                expect(is_empty(both) == !nonempty, "emptiness test disagrees");
                expect(unite(a, both) == a && intersect(a, either) == a,
                       "absorption law fails");
                expect(intersect(c, a) == both && unite(c, a) == either,
                       "commutativity fails");
            }
        }
        Homeomorphism tau = make_system(SystemKind::BitwiseNot);
        for (int trial = 0; trial < 200; ++trial) {
            ClopenSet z = random_cylinder_set(rng, Backend::TwoSided);
            expect(tau.image(tau.image(z, 1), 1) == z, "NOT twice is not identity");
            expect(tau.image(z, 2) == z, "NOT squared is not identity");
        }
        PartitionSequence od = canonical_sequence(SystemKind::Odometer);
        for (int n = 0; n <= 6; ++n) {
            const Partition p = od.level(n + 1);
            std::set<std::string> visited;
            ClopenSet z = p.blocks[0];
            std::uint64_t steps = 0;
            do {
                visited.insert(print_label(z));
                z = od.h.image(z, 1);
                ++steps;
                expect(steps <= (std::uint64_t(1) << (n + 1)),
                       "odometer cycle is longer than the level");
            } while (z != p.blocks[0]);
            expect(steps == (std::uint64_t(1) << (n + 1)),
                   "odometer cycle length is not 2^(n+1) at n=" + std::to_string(n));
            expect(visited.size() == p.blocks.size(),
                   "odometer cycle misses blocks at n=" + std::to_string(n));
        }
        return std::string("400 boolean-law cases, 200 involution cases, "
                           "odometer cycles exact for n <= 6");
    });

    criterion(12, "documents round-trip byte-identically at guard depths", [] {
        namespace fs = std::filesystem;
        for (SystemKind k : kAll) {
            const HDiagram& d = diagram(k, guard_depth_of(k));
            fs::path tmp = fs::temp_directory_path() /
                           ("hdiag_acceptance_" + std::string(system_name(k)) +
                            ".json");
            save_json_file(d, tmp.string());
            HDiagram back = load_json_file(tmp.string());
            expect(validate(back).empty(),
                   std::string(system_name(k)) + ": reloaded document fails validation");
            std::ifstream in(tmp, std::ios::binary);
            std::string on_disk((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
            in.close();
            fs::remove(tmp);
            expect(to_json_text(back) == on_disk,
                   std::string(system_name(k)) + ": re-export is not byte-identical");
        }
        return std::string("shift@8, bitwise-not@8, odometer@14, zstar@200");
    });

    std::cout << "acceptance: " << g_passed << "/12 criteria passed";
    if (g_failed) std::cout << ", " << g_failed << " FAILED";
    std::cout << "\n";
    return g_failed == 0 ? 0 : 1;
}
