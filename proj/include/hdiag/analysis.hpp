#ifndef HDIAG_ANALYSIS_HPP
#define HDIAG_ANALYSIS_HPP

// Bounded-depth decision procedures on built diagrams:
//
//   connected / semantic_connected — graph reachability vs the exact
//       h^j-containment oracle (even level gaps), which agree by the
//       translate characterization of connectivity.
//   w_set           — the union of level-(m+2i) blocks connected to a block Z
//                     at level m, computed both graph-side and as the truncated
//                     orbit union of h^j(Z), |j| <= i.
//   global_periodicity — h^m = id detection: every length-(2m-1) alternating
//                     red/blue replay must agree with the all-blue replay.
//   em_check        — along a blue path, find for each i a level n_i whose
//                     every vertex connects to the path's level-i vertex.
//   minimality_check — the same search for every vertex, plus two sound
//                     refuters (stabilized invariant orbit-union, and a
//                     straight-path fixed point escaping every orbit-union).
//   straight_paths  — full-depth chains whose blue and red edges coincide.
//
// Verdicts are tri-state: Holds is always depth-qualified, Fails carries a
// replayable witness, Inconclusive lists what the depth could not settle.

#include "construction.hpp"
#include "diagram.hpp"
#include "partition.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hdiag {

// ---- connectivity ------------------------------------------------------------

// w ~> v: an upward path of any color mix (zero-length included).
inline bool connected(const HDiagram& d, VertexRef w, VertexRef v) {
    if (v.level > w.level)
        throw std::invalid_argument("connected: target level above source level");
    std::vector<std::uint32_t> frontier = {w.index};
    for (int lvl = w.level; lvl > v.level; --lvl) {
        std::vector<std::uint32_t> next;
        next.reserve(frontier.size() * 2);
        for (std::uint32_t i : frontier) {
            next.push_back(d.parent(lvl, i, Color::Blue));
            next.push_back(d.parent(lvl, i, Color::Red));
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier = std::move(next);
    }
    return std::binary_search(frontier.begin(), frontier.end(), v.index);
}

// The translate oracle: Z2 (at level m+2i) meets some h^j(Z1), |j| <= i —
// equivalently lies inside it, blocks being partition atoms. Defined for even
// level gaps only. Returns the witnessing j of smallest magnitude.
inline std::pair<bool, long long> semantic_connected(const Homeomorphism& h,
                                                     const ClopenSet& z2,
                                                     const ClopenSet& z1, int gap) {
    if (gap < 0 || gap % 2 != 0)
        throw std::invalid_argument("semantic_connected: level gap must be even and >= 0"
                                    " (odd gaps have no translate form; use connected)");
    int i = gap / 2;
    for (int a = 0; a <= i; ++a)
        for (long long j : {(long long)a, (long long)-a}) {
            if (contains(h.image(z1, j), z2)) return {true, j};
            if (a == 0) break;
        }
    return {false, 0};
}

inline std::pair<bool, long long> semantic_connected(const PartitionSequence& seq,
                                                     VertexRef w, VertexRef v) {
    const ClopenSet& z2 = seq.level(w.level).blocks.at(w.index);
    const ClopenSet& z1 = seq.level(v.level).blocks.at(v.index);
    return semantic_connected(seq.h, z2, z1, w.level - v.level);
}

// ---- downward connectivity sweeps ---------------------------------------------

namespace detail {

// Per-level boolean sweep of {w : w ~> v}: a vertex is connected iff either
// parent is. Returns flags for levels v.level..max_level.
inline std::vector<std::vector<bool>> connectivity_flags(const HDiagram& d, VertexRef v,
                                                         int max_level) {
    if (max_level > d.depth())
        throw std::out_of_range("connectivity sweep beyond built depth");
    std::vector<std::vector<bool>> flags;
    std::vector<bool> cur(d.size(v.level), false);
    cur[v.index] = true;
    flags.push_back(cur);
    for (int lvl = v.level; lvl < max_level; ++lvl) {
        const DiagramLevel& L = d.levels[std::size_t(lvl)];
        std::vector<bool> next(L.lower_size, false);
        for (std::uint32_t w = 0; w < L.lower_size; ++w)
            next[w] = cur[L.blue_parent[w]] || cur[L.red_parent[w]];
        flags.push_back(next);
        cur = std::move(next);
    }
    return flags;
}

// Smallest n in [v.level, max_level] such that every vertex at level n is
// connected to v; -1 when no such level exists within the bound.
inline int full_connectivity_level(const HDiagram& d, VertexRef v, int max_level) {
    std::vector<bool> cur(d.size(v.level), false);
    cur[v.index] = true;
    for (int lvl = v.level; lvl <= max_level; ++lvl) {
        if (std::find(cur.begin(), cur.end(), false) == cur.end()) return lvl;
        if (lvl == max_level) break;
        const DiagramLevel& L = d.levels[std::size_t(lvl)];
        std::vector<bool> next(L.lower_size, false);
        for (std::uint32_t w = 0; w < L.lower_size; ++w)
            next[w] = cur[L.blue_parent[w]] || cur[L.red_parent[w]];
        cur = std::move(next);
    }
    return -1;
}

} // namespace detail

// ---- W(Z; m, i) ----------------------------------------------------------------

struct WSets {
    ClopenSet graph_union;    // union of level-(m+2i) blocks connected to Z
    ClopenSet semantic_union; // union of h^j(Z), |j| <= i
};

inline WSets w_set(const HDiagram& d, const PartitionSequence& seq, VertexRef v, int i) {
    if (i < 0) throw std::invalid_argument("w_set: i must be >= 0");
    int m = v.level;
    int bottom = m + 2 * i;
    if (bottom > d.depth())
        throw std::out_of_range("w_set: level " + std::to_string(bottom) + " not built");
    const ClopenSet& z = seq.level(m).blocks.at(v.index);

    auto flags = detail::connectivity_flags(d, v, bottom);
    const Partition& pb = seq.level(bottom);
    ClopenSet graph_u = ClopenSet::empty(z.backend);
    for (std::size_t w = 0; w < pb.blocks.size(); ++w)
        if (flags.back()[w]) graph_u = unite(graph_u, pb.blocks[w]);

    ClopenSet sem_u = ClopenSet::empty(z.backend);
    for (int j = -i; j <= i; ++j) sem_u = unite(sem_u, seq.h.image(z, j));
    return WSets{std::move(graph_u), std::move(sem_u)};
}

// ---- verdicts -------------------------------------------------------------------

enum class Status { Holds, Fails, Inconclusive };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Holds:        return "Holds";
        case Status::Fails:        return "Fails";
        case Status::Inconclusive: return "Inconclusive";
    }
    return "?";
}

// CLI contract: Holds 0, Fails 1, Inconclusive 4.
inline int exit_code(Status s) {
    switch (s) {
        case Status::Holds:        return 0;
        case Status::Fails:        return 1;
        case Status::Inconclusive: return 4;
    }
    return 4;
}

struct PeriodicityWitness {
    VertexRef source;
    std::vector<Color> alternating; // m reds interleaved with m-1 blues
    std::vector<Color> blues;       // 2m-1 blues
    VertexRef alternating_end;
    VertexRef blue_end;
};

struct EscapeRow {
    int i = 0;
    int level = 0;               // v.level + 2i
    bool graph_disconnected = false;
    bool semantically_disjoint = false;
};

struct MinimalityObstruction {
    enum class Kind { StabilizedUnion, FixedPointEscape };
    Kind kind = Kind::StabilizedUnion;
    VertexRef vertex; // the block no level fully connects to

    // StabilizedUnion: a proper clopen h-invariant set equal to the orbit union.
    ClopenSet invariant_union;
    int stabilized_at = 0; // union of |j| <= stabilized_at already closed

    // FixedPointEscape: a full-depth straight path whose pinned point never
    // enters any orbit union of the vertex's block.
    BluePathPrefix straight;
    std::vector<EscapeRow> escape;
};

struct Verdict {
    Status status = Status::Inconclusive;
    int depth_checked = 0;
    std::string summary;

    std::optional<PeriodicityWitness> periodicity_witness;
    std::vector<std::pair<int, int>> em_table; // i -> n_i
    std::vector<int> em_failing;
    std::vector<std::pair<VertexRef, int>> vertex_table; // v -> n_v
    std::vector<VertexRef> failing_vertices;
    std::optional<MinimalityObstruction> obstruction;
};

// ---- global periodicity -----------------------------------------------------

// h^m = id corresponds to: from every vertex, the replay of
// [red, blue, red, ..., red] (m reds) ends where the replay of 2m-1 blues
// ends. Checking length exactly 2m-1 suffices; longer alternations factor
// through these. A violation is independent of depth, so the Fails witness is
// definitive; Holds is qualified by the depth searched.
inline Verdict global_periodicity(const HDiagram& d, int m) {
    if (m < 1) throw std::invalid_argument("global_periodicity: m must be >= 1");
    int plen = 2 * m - 1;
    if (d.depth() < plen)
        throw std::invalid_argument("global_periodicity: need depth >= " +
                                    std::to_string(plen) + ", diagram has " +
                                    std::to_string(d.depth()));
    std::vector<Color> alt, blues;
    for (int k = 0; k < plen; ++k) {
        alt.push_back(k % 2 == 0 ? Color::Red : Color::Blue);
        blues.push_back(Color::Blue);
    }
    Verdict out;
    out.depth_checked = d.depth();
    for (int n = 0; n + plen <= d.depth(); ++n) {
        int bottom = n + plen;
        for (std::uint32_t idx = 0; idx < d.size(bottom); ++idx) {
            VertexRef w{bottom, idx};
            VertexRef a = ancestor(d, w, alt);
            VertexRef b = ancestor(d, w, blues);
            if (a != b) {
                out.status = Status::Fails;
                out.periodicity_witness =
                    PeriodicityWitness{w, alt, blues, a, b};
                out.summary = "period " + std::to_string(m) + " fails: from " +
                              d.label(w) + " (" + w.str() + ") the alternating replay"
                              " reaches " + d.label(a) + " but the blue replay reaches " +
                              d.label(b);
                return out;
            }
        }
    }
    out.status = Status::Holds;
    out.summary = "all alternating-vs-blue replays of length " + std::to_string(plen) +
                  " agree at every start level up to depth " + std::to_string(d.depth());
    return out;
}

// ---- straight paths -----------------------------------------------------------

// Blue chains along which the red edge parallels the blue edge at every step
// of the FULL built depth, truncated to the requested depth and deduplicated.
// The extra levels act as a persistence horizon: at any frontier there are
// one-off parallels that die one level deeper (they pin no point of the
// space), and truncation collapses them into the true columns. Build one
// level beyond the depth you want to report to filter them; at
// depth == built depth the frontier transients are included.
inline std::vector<BluePathPrefix> straight_paths(const HDiagram& d, int depth) {
    if (depth < 0 || depth > d.depth())
        throw std::out_of_range("straight_paths: depth not built");
    std::vector<BluePathPrefix> out;
    int D = d.depth();
    if (D == 0) return out;
    for (std::uint32_t bottom = 0; bottom < d.size(D); ++bottom) {
        BluePathPrefix p;
        p.indices.assign(std::size_t(D) + 1, 0);
        p.indices[std::size_t(D)] = bottom;
        bool straight = true;
        std::uint32_t cur = bottom;
        for (int lvl = D; lvl >= 1; --lvl) {
            std::uint32_t b = d.parent(lvl, cur, Color::Blue);
            std::uint32_t r = d.parent(lvl, cur, Color::Red);
            if (b != r) { straight = false; break; }
            cur = b;
            p.indices[std::size_t(lvl - 1)] = cur;
        }
        if (!straight) continue;
        p.indices.resize(std::size_t(depth) + 1);
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(),
              [](const BluePathPrefix& a, const BluePathPrefix& b) {
                  return a.indices < b.indices;
              });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const BluePathPrefix& a, const BluePathPrefix& b) {
                              return a.indices == b.indices;
                          }),
              out.end());
    return out;
}

inline std::vector<BluePathPrefix> straight_paths(const HDiagram& d) {
    return straight_paths(d, d.depth());
}

// ---- property (EM) along a blue path -------------------------------------------

inline void check_blue_path(const HDiagram& d, const BluePathPrefix& path) {
    if (path.indices.empty())
        throw std::invalid_argument("blue path is empty");
    if (path.depth() > d.depth())
        throw std::invalid_argument("blue path deeper than the diagram");
    for (int k = 0; k + 1 < int(path.indices.size()); ++k) {
        std::uint32_t child = path.indices[std::size_t(k + 1)];
        if (child >= d.size(k + 1) ||
            d.parent(k + 1, child, Color::Blue) != path.indices[std::size_t(k)])
            throw std::invalid_argument("not a blue path at level " + std::to_string(k + 1));
    }
}

// For each i <= i_max, search n_i in [i, search_depth] with all of level n_i
// connected to the path's level-i vertex. EM has no finite counterexample, so
// the outcome is Holds (all found) or Inconclusive (listing the failing i).
inline Verdict em_check(const HDiagram& d, const BluePathPrefix& path, int i_max,
                        int search_depth) {
    check_blue_path(d, path);
    if (i_max < 0 || i_max > path.depth())
        throw std::invalid_argument("em_check: path not realized to i_max");
    if (search_depth > d.depth())
        throw std::invalid_argument("em_check: diagram shallower than search_depth");
    Verdict out;
    out.depth_checked = search_depth;
    for (int i = 0; i <= i_max; ++i) {
        VertexRef v{i, path.indices[std::size_t(i)]};
        int n = detail::full_connectivity_level(d, v, search_depth);
        if (n >= 0)
            out.em_table.emplace_back(i, n);
        else
            out.em_failing.push_back(i);
    }
    if (out.em_failing.empty()) {
        out.status = Status::Holds;
        out.summary = "every path vertex up to i = " + std::to_string(i_max) +
                      " is fully connected from some level within depth " +
                      std::to_string(search_depth);
    } else {
        out.status = Status::Inconclusive;
        out.summary = std::to_string(out.em_failing.size()) +
                      " path vertices found no fully-connected level within depth " +
                      std::to_string(search_depth);
    }
    return out;
}

// ---- minimality ------------------------------------------------------------------

namespace detail {

// Try to refute minimality for the block of `v` via a full-depth straight
// path: if the path's level-(v.level) vertex differs from v, its pinned fixed
// point can never enter the orbit unions of v's block. Every row of the
// certificate is verified both graph-side (no connectivity) and semantically
// (block disjoint from the union of h^j images).
inline std::optional<MinimalityObstruction> escape_refuter(const HDiagram& d,
                                                           const PartitionSequence& seq,
                                                           VertexRef v) {
    const ClopenSet& z = seq.level(v.level).blocks.at(v.index);
    std::vector<BluePathPrefix> paths = straight_paths(d);
    // A chain whose bottom block meets its own h-image can pin a fixed point;
    // try those first so the reported certificate is the persistent column,
    // not a frontier transient (either kind verifies soundly).
    std::stable_sort(paths.begin(), paths.end(),
                     [&](const BluePathPrefix& a, const BluePathPrefix& b) {
                         auto compat = [&](const BluePathPrefix& p) {
                             const ClopenSet& bot =
                                 seq.level(d.depth()).blocks.at(p.indices.back());
                             return !is_empty(intersect(bot, seq.h.image(bot, 1)));
                         };
                         return compat(a) > compat(b);
                     });
    for (const BluePathPrefix& p : paths) {
        if (p.indices[std::size_t(v.level)] == v.index) continue;
        std::vector<EscapeRow> rows;
        bool ok = true;
        ClopenSet sem = ClopenSet::empty(z.backend);
        for (int i = 0; v.level + 2 * i <= d.depth(); ++i) {
            int lvl = v.level + 2 * i;
            EscapeRow row;
            row.i = i;
            row.level = lvl;
            VertexRef pv{lvl, p.indices[std::size_t(lvl)]};
            row.graph_disconnected = !connected(d, pv, v);
            sem = unite(sem, seq.h.image(z, i));
            if (i > 0) sem = unite(sem, seq.h.image(z, -i));
            const ClopenSet& pblock = seq.level(lvl).blocks.at(pv.index);
            row.semantically_disjoint = is_empty(intersect(pblock, sem));
            rows.push_back(row);
            if (!row.graph_disconnected || !row.semantically_disjoint) { ok = false; break; }
        }
        if (ok && !rows.empty()) {
            MinimalityObstruction obs;
            obs.kind = MinimalityObstruction::Kind::FixedPointEscape;
            obs.vertex = v;
            obs.straight = p;
            obs.escape = std::move(rows);
            return obs;
        }
    }
    return std::nullopt;
}

// Try to refute via stabilization: the orbit unions W_k = U_{|j|<=k} h^j(Z)
// form a non-decreasing clopen chain; if it closes strictly inside the space
// and the closed value is h-invariant, that value is a proper clopen invariant
// set. Growth is capped so exponential backends cannot blow up the search.
inline std::optional<MinimalityObstruction> stabilization_refuter(
    const PartitionSequence& seq, VertexRef v, int k_max) {
    const ClopenSet& z = seq.level(v.level).blocks.at(v.index);
    ClopenSet w = z;
    for (int k = 1; k <= k_max; ++k) {
        ClopenSet next = unite(w, unite(seq.h.image(z, k), seq.h.image(z, -k)));
        if (next == w) {
            if (!w.is_whole() && seq.h.image(w, 1) == w) {
                MinimalityObstruction obs;
                obs.kind = MinimalityObstruction::Kind::StabilizedUnion;
                obs.vertex = v;
                obs.invariant_union = w;
                obs.stabilized_at = k - 1;
                return obs;
            }
            return std::nullopt;
        }
        if (next.words.size() > 200000 || next.ints.size() > 200000)
            return std::nullopt; // representation growing without structure
        w = std::move(next);
    }
    return std::nullopt;
}

} // namespace detail

// Search n_v for every vertex at levels <= i_max. All found: Holds. Otherwise,
// when the semantic system is supplied, attempt a definite refutation for a
// failing vertex (fixed-point escape first — it is cheap — then orbit-union
// stabilization); if neither lands, the verdict stays Inconclusive.
inline Verdict minimality_check(const HDiagram& d, int i_max, int search_depth,
                                const PartitionSequence* seq = nullptr) {
    if (i_max < 0 || search_depth < i_max)
        throw std::invalid_argument("minimality_check: need 0 <= i_max <= search_depth");
    if (search_depth > d.depth())
        throw std::invalid_argument("minimality_check: diagram shallower than search_depth");
    Verdict out;
    out.depth_checked = search_depth;
    for (int i = 0; i <= i_max; ++i)
        for (std::uint32_t idx = 0; idx < d.size(i); ++idx) {
            VertexRef v{i, idx};
            int n = detail::full_connectivity_level(d, v, search_depth);
            if (n >= 0)
                out.vertex_table.emplace_back(v, n);
            else
                out.failing_vertices.push_back(v);
        }
    if (out.failing_vertices.empty()) {
        out.status = Status::Holds;
        out.summary = "every vertex at levels <= " + std::to_string(i_max) +
                      " is fully connected from some level within depth " +
                      std::to_string(search_depth);
        return out;
    }
    if (seq) {
        int k_max = std::min(search_depth, 12);
        for (VertexRef v : out.failing_vertices) {
            auto esc = detail::escape_refuter(d, *seq, v);
            if (esc) {
                out.status = Status::Fails;
                out.obstruction = std::move(esc);
                out.summary = "minimality fails: block " + d.label(v) + " (" + v.str() +
                              ") is escaped by the straight path through " +
                              d.label(VertexRef{d.depth(),
                                                out.obstruction->straight.indices.back()}) +
                              " at every checked depth";
                return out;
            }
            auto stab = detail::stabilization_refuter(*seq, v, k_max);
            if (stab) {
                out.status = Status::Fails;
                out.obstruction = std::move(stab);
                out.summary = "minimality fails: the orbit union of " + d.label(v) +
                              " stabilizes at a proper clopen invariant set (" +
                              print_label(out.obstruction->invariant_union) + ")";
                return out;
            }
        }
    }
    out.status = Status::Inconclusive;
    out.summary = std::to_string(out.failing_vertices.size()) +
                  " vertices found no fully-connected level within depth " +
                  std::to_string(search_depth);
    return out;
}

// ---- exhaustive oracle comparison (graph vs translate semantics) ---------------

struct OracleCell {
    int top = 0;
    int bottom = 0;
    std::size_t pairs = 0;
    std::size_t mismatches = 0;
};

struct OracleReport {
    std::vector<OracleCell> cells;
    std::size_t pairs = 0;
    std::size_t mismatches = 0;
    bool all_match() const { return mismatches == 0; }
};

// Compare connected() with semantic_connected() for every vertex pair with an
// even level gap <= max_gap and bottom level <= max_level.
inline OracleReport oracle_compare(const HDiagram& d, const PartitionSequence& seq,
                                   int max_level, int max_gap) {
    if (max_level > d.depth())
        throw std::out_of_range("oracle_compare: max_level beyond built depth");
    OracleReport rep;
    for (int t = 0; t <= max_level; ++t) {
        // reach[x] = sorted reachable top-level indices, advanced level by level
        std::vector<std::vector<std::uint32_t>> reach(d.size(t));
        for (std::uint32_t x = 0; x < d.size(t); ++x) reach[x] = {x};
        for (int b = t; b <= max_level && b - t <= max_gap; ++b) {
            if ((b - t) % 2 == 0) {
                int i = (b - t) / 2;
                const Partition& pt = seq.level(t);
                const Partition& pb = seq.level(b);
                // image cache: h^j of every top block, |j| <= i
                std::vector<std::vector<ClopenSet>> img(pt.blocks.size());
                for (std::size_t v = 0; v < pt.blocks.size(); ++v) {
                    img[v].reserve(std::size_t(2 * i + 1));
                    for (int j = -i; j <= i; ++j)
                        img[v].push_back(seq.h.image(pt.blocks[v], j));
                }
                OracleCell cell;
                cell.top = t;
                cell.bottom = b;
                for (std::uint32_t w = 0; w < d.size(b); ++w) {
                    const ClopenSet& z2 = pb.blocks[w];
                    for (std::uint32_t v = 0; v < d.size(t); ++v) {
                        bool graph = std::binary_search(reach[w].begin(), reach[w].end(), v);
                        bool sem = false;
                        for (const ClopenSet& hz : img[v])
                            if (contains(hz, z2)) { sem = true; break; }
                        cell.pairs += 1;
                        if (graph != sem) cell.mismatches += 1;
                    }
                }
                rep.pairs += cell.pairs;
                rep.mismatches += cell.mismatches;
                rep.cells.push_back(cell);
            }
            if (b == max_level || b - t == max_gap) break;
            // step the reach table one level down
            const DiagramLevel& L = d.levels[std::size_t(b)];
            std::vector<std::vector<std::uint32_t>> next(L.lower_size);
            for (std::uint32_t w = 0; w < L.lower_size; ++w) {
                const auto& rb = reach[L.blue_parent[w]];
                const auto& rr = reach[L.red_parent[w]];
                std::vector<std::uint32_t> merged;
                merged.reserve(rb.size() + rr.size());
                std::set_union(rb.begin(), rb.end(), rr.begin(), rr.end(),
                               std::back_inserter(merged));
                next[w] = std::move(merged);
            }
            reach = std::move(next);
        }
    }
    return rep;
}

} // namespace hdiag

#endif // HDIAG_ANALYSIS_HPP
