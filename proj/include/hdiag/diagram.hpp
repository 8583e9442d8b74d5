#ifndef HDIAG_DIAGRAM_HPP
#define HDIAG_DIAGRAM_HPP

// Layered two-colored diagrams. Level n holds the blocks of the n-th
// partition; every vertex one level down has exactly one blue parent (the
// block containing it) and one red parent (the block whose h^{+/-1}-image
// contains it, sign alternating with the level). That uniqueness lets the
// whole edge set live in two parent arrays per level pair, and makes path
// replay deterministic.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdiag {

struct VertexRef {
    int level = 0;
    std::uint32_t index = 0;

    friend bool operator==(const VertexRef& a, const VertexRef& b) {
        return a.level == b.level && a.index == b.index;
    }
    friend bool operator!=(const VertexRef& a, const VertexRef& b) { return !(a == b); }
    friend bool operator<(const VertexRef& a, const VertexRef& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.index < b.index;
    }
    std::string str() const {
        return std::to_string(level) + "/" + std::to_string(index);
    }
};

enum class Color : std::uint8_t { Blue, Red };

inline const char* color_name(Color c) { return c == Color::Blue ? "blue" : "red"; }

// Edges from level n+1 (lower) into level n (upper), one pair per lower vertex.
struct DiagramLevel {
    std::uint32_t upper_size = 0;
    std::uint32_t lower_size = 0;
    std::vector<std::uint32_t> blue_parent; // lower index -> upper index
    std::vector<std::uint32_t> red_parent;  // lower index -> upper index
};

// (source vertex, color word); replay moves one level up per color.
struct ColoredPath {
    VertexRef source;
    std::vector<Color> edges;
};

// A blue chain from level 0 downward: indices[k] is the vertex at level k and
// blue_parent(indices[k+1]) == indices[k].
struct BluePathPrefix {
    std::vector<std::uint32_t> indices;
    int depth() const { return int(indices.size()) - 1; }
};

struct HDiagram {
    // levels[k] connects level k+1 to level k; labels[k] names level k's blocks.
    std::vector<DiagramLevel> levels;
    std::vector<std::vector<std::string>> labels;
    std::string system = "external";
    std::string parity_convention =
        "red edge at level pair n encodes containment in h(Z) for even n, "
        "in h^-1(Z) for odd n";

    int depth() const { return int(levels.size()); }

    std::uint32_t size(int level) const {
        if (level < 0 || level > depth())
            throw std::out_of_range("level " + std::to_string(level) + " not built");
        if (level == depth()) {
            if (levels.empty()) return std::uint32_t(labels.at(0).size());
            return levels.back().lower_size;
        }
        return levels[std::size_t(level)].upper_size;
    }

    const std::string& label(VertexRef v) const {
        return labels.at(std::size_t(v.level)).at(v.index);
    }

    bool has_vertex(VertexRef v) const {
        return v.level >= 0 && v.level <= depth() && v.index < size(v.level);
    }

    // Index lookup by label (linear; levels are modest at query scales).
    VertexRef find_vertex(int level, const std::string& lab) const {
        const auto& ls = labels.at(std::size_t(level));
        for (std::size_t i = 0; i < ls.size(); ++i)
            if (ls[i] == lab) return VertexRef{level, std::uint32_t(i)};
        throw std::invalid_argument("no vertex labeled " + lab + " at level " +
                                    std::to_string(level));
    }

    std::uint32_t parent(int lower_level, std::uint32_t index, Color c) const {
        const DiagramLevel& L = levels.at(std::size_t(lower_level - 1));
        const auto& m = (c == Color::Blue) ? L.blue_parent : L.red_parent;
        return m.at(index);
    }
};

// Structural checks: totality and surjectivity of both parent maps, the level
// size chain, and the two-step rhombus identity blue(blue(w)) == red(red(w)).
// Violations are data; an empty list is the pass verdict. The verdict is
// necessary-conditions-only: it certifies the conditions listed here, not that
// the diagram arises from a dynamical system.
inline std::vector<std::string> validate(const HDiagram& d) {
    std::vector<std::string> out;
    if (d.labels.empty() || d.labels.front().empty()) {
        out.push_back("level 0 is empty");
        return out;
    }
    if (d.labels.size() != std::size_t(d.depth()) + 1)
        out.push_back("label rows (" + std::to_string(d.labels.size()) +
                      ") do not match depth+1 (" + std::to_string(d.depth() + 1) + ")");
    for (int k = 0; k < d.depth(); ++k) {
        const DiagramLevel& L = d.levels[std::size_t(k)];
        std::string pair = "level pair " + std::to_string(k) + ": ";
        if (L.upper_size == 0 || L.lower_size == 0)
            out.push_back(pair + "empty level");
        if (std::size_t(k) < d.labels.size() && d.labels[std::size_t(k)].size() != L.upper_size)
            out.push_back(pair + "label count does not match upper size");
        if (std::size_t(k + 1) < d.labels.size() &&
            d.labels[std::size_t(k + 1)].size() != L.lower_size)
            out.push_back(pair + "label count does not match lower size");
        if (k > 0 && d.levels[std::size_t(k - 1)].lower_size != L.upper_size)
            out.push_back(pair + "size chain broken (previous lower " +
                          std::to_string(d.levels[std::size_t(k - 1)].lower_size) +
                          " vs upper " + std::to_string(L.upper_size) + ")");
        if (L.blue_parent.size() != L.lower_size)
            out.push_back(pair + "blue_parent not total");
        if (L.red_parent.size() != L.lower_size)
            out.push_back(pair + "red_parent not total");
        std::vector<bool> blue_hit(L.upper_size, false), red_hit(L.upper_size, false);
        for (std::uint32_t i = 0; i < L.blue_parent.size(); ++i) {
            if (L.blue_parent[i] >= L.upper_size)
                out.push_back(pair + "blue_parent out of range at " + std::to_string(i));
            else
                blue_hit[L.blue_parent[i]] = true;
        }
        for (std::uint32_t i = 0; i < L.red_parent.size(); ++i) {
            if (L.red_parent[i] >= L.upper_size)
                out.push_back(pair + "red_parent out of range at " + std::to_string(i));
            else
                red_hit[L.red_parent[i]] = true;
        }
        for (std::uint32_t u = 0; u < L.upper_size; ++u) {
            if (!blue_hit[u])
                out.push_back(pair + "blue_parent not surjective (upper " +
                              std::to_string(u) + " unhit)");
            if (!red_hit[u])
                out.push_back(pair + "red_parent not surjective (upper " +
                              std::to_string(u) + " unhit)");
        }
    }
    // rhombus identity across consecutive level pairs
    for (int k = 0; k + 1 < d.depth(); ++k) {
        const DiagramLevel& upperL = d.levels[std::size_t(k)];
        const DiagramLevel& lowerL = d.levels[std::size_t(k + 1)];
        if (upperL.blue_parent.size() != upperL.lower_size ||
            upperL.red_parent.size() != upperL.lower_size ||
            lowerL.blue_parent.size() != lowerL.lower_size ||
            lowerL.red_parent.size() != lowerL.lower_size)
            continue; // totality violations already reported
        bool in_range = true;
        for (std::uint32_t w = 0; w < lowerL.lower_size && in_range; ++w)
            if (lowerL.blue_parent[w] >= upperL.lower_size ||
                lowerL.red_parent[w] >= upperL.lower_size)
                in_range = false;
        if (!in_range) continue;
        for (std::uint32_t w = 0; w < lowerL.lower_size; ++w) {
            std::uint32_t bb = upperL.blue_parent[lowerL.blue_parent[w]];
            std::uint32_t rr = upperL.red_parent[lowerL.red_parent[w]];
            if (bb != rr)
                out.push_back("rhombus incomplete at level " + std::to_string(k + 2) +
                              " vertex " + std::to_string(w) + ": blue o blue -> " +
                              std::to_string(bb) + ", red o red -> " + std::to_string(rr));
        }
    }
    return out;
}

// Deterministic replay: follow the color word upward from v.
inline VertexRef ancestor(const HDiagram& d, VertexRef v, const std::vector<Color>& colors) {
    if (!d.has_vertex(v)) throw std::out_of_range("vertex " + v.str() + " not in diagram");
    if (int(colors.size()) > v.level)
        throw std::out_of_range("path exceeds diagram top (" +
                                std::to_string(colors.size()) + " edges from level " +
                                std::to_string(v.level) + ")");
    VertexRef cur = v;
    for (Color c : colors) {
        cur.index = d.parent(cur.level, cur.index, c);
        cur.level -= 1;
    }
    return cur;
}

// All vertices at target_level reachable from w by upward paths of any color
// mix (zero-length paths included).
inline std::vector<VertexRef> reachable_uppers(const HDiagram& d, VertexRef w,
                                               int target_level) {
    if (!d.has_vertex(w)) throw std::out_of_range("vertex " + w.str() + " not in diagram");
    if (target_level < 0 || target_level > w.level)
        throw std::out_of_range("target above diagram or below source");
    std::vector<std::uint32_t> frontier = {w.index};
    for (int lvl = w.level; lvl > target_level; --lvl) {
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
    std::vector<VertexRef> out;
    out.reserve(frontier.size());
    for (std::uint32_t i : frontier) out.push_back(VertexRef{target_level, i});
    return out;
}

struct LevelCounts {
    std::size_t vertices = 0;
    std::size_t blue_edges = 0;
    std::size_t red_edges = 0;
};

// Vertex count at level n plus edge counts of level pair n (each lower vertex
// contributes one blue and one red edge).
inline LevelCounts counts(const HDiagram& d, int n) {
    if (n < 0 || n >= d.depth())
        throw std::out_of_range("level pair " + std::to_string(n) + " not built");
    const DiagramLevel& L = d.levels[std::size_t(n)];
    return LevelCounts{L.upper_size, L.lower_size, L.lower_size};
}

} // namespace hdiag

#endif // HDIAG_DIAGRAM_HPP
