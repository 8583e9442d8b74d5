#ifndef HDIAG_CONSTRUCTION_HPP
#define HDIAG_CONSTRUCTION_HPP

// Builds the layered diagram from a partition sequence: level n holds P_n's
// blocks; each block of P_{n+1} gets one blue edge to the block of P_n
// containing it and one red edge to the block Z of P_n with Z' inside h(Z)
// (even n) or h^-1(Z) (odd n). The sequence must be h-refined for those
// parents to exist; the builder checks this and reports the offending block.

#include "diagram.hpp"
#include "partition.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hdiag {

enum class ParentSearch {
    // Representative-point location via a word index over the coarser family,
    // followed by an exact containment verification. Equivalent to the
    // exhaustive scan because the coarser family is pairwise disjoint (word
    // index collisions prove overlap and abort the build).
    PointLocation,
    // Plain scan of the whole coarser family with a uniqueness assertion.
    Exhaustive,
};

namespace detail {

struct ParentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Find, for every set in `lower`, the index of the unique member of `family`
// containing it. `family` is expected to be pairwise disjoint and covering.
inline std::vector<std::uint32_t> locate_parents(const std::vector<ClopenSet>& family,
                                                 const std::vector<ClopenSet>& lower,
                                                 ParentSearch mode,
                                                 const std::string& family_desc) {
    std::vector<std::uint32_t> out;
    out.reserve(lower.size());
    const Backend bk = family.empty() ? Backend::Integer : family.front().backend;

    if (mode == ParentSearch::Exhaustive || bk == Backend::Integer) {
        for (std::size_t li = 0; li < lower.size(); ++li) {
            int found = -1;
            for (std::size_t fi = 0; fi < family.size(); ++fi) {
                if (contains(family[fi], lower[li])) {
                    if (found >= 0)
                        throw ParentError("blocks overlap in " + family_desc +
                                          " (indices " + std::to_string(found) + ", " +
                                          std::to_string(fi) + ")");
                    found = int(fi);
                }
            }
            if (found < 0)
                throw ParentError("no parent in " + family_desc + " for block " +
                                  print_label(lower[li]));
            out.push_back(std::uint32_t(found));
        }
        return out;
    }

    // Point location: index every family word at the family's widest window.
    int R = 0;
    for (const ClopenSet& z : family) R = std::max(R, z.window);
    std::unordered_map<std::string, std::uint32_t> index;
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
        ClopenSet w = family[fi].widened(R);
        for (std::string& word : w.words) {
            auto [it, inserted] = index.emplace(std::move(word), std::uint32_t(fi));
            if (!inserted && it->second != fi)
                throw ParentError("blocks overlap in " + family_desc + " (indices " +
                                  std::to_string(it->second) + ", " +
                                  std::to_string(fi) + ")");
        }
    }
    for (const ClopenSet& z : lower) {
        if (z.is_empty())
            throw ParentError("empty block among the finer level's blocks");
        std::string rep = z.representative_word(std::max(R, z.window));
        auto it = index.find(ClopenSet::restrict_word(rep, std::max(R, z.window), R, bk));
        if (it == index.end())
            throw ParentError("no parent in " + family_desc + " for block " +
                              print_label(z) + " (family does not cover it)");
        if (!contains(family[it->second], z))
            throw ParentError("no parent in " + family_desc + " for block " +
                              print_label(z) +
                              " (straddles the family: not a refinement)");
        out.push_back(it->second);
    }
    return out;
}

} // namespace detail

// Realize levels 0..depth of the sequence and wire both parent maps. Throws
// std::invalid_argument with a "not h-refined at level n" message when some
// block has no blue or red parent, and on family overlaps.
inline HDiagram build_diagram(const PartitionSequence& seq, int depth,
                              ParentSearch mode = ParentSearch::PointLocation) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    HDiagram d;
    d.system = system_name(seq.h.kind);

    // Realize every level first: later level(n) calls may grow the cache
    // vector, and the loop below keeps references into it.
    for (int n = 0; n <= depth; ++n) seq.level(n);

    const Partition* upper = &seq.level(0);
    d.labels.push_back(upper->labels());
    for (int n = 0; n < depth; ++n) {
        const Partition& lower = seq.level(n + 1);
        if (upper->blocks.empty() || lower.blocks.empty())
            throw std::invalid_argument("empty partition at level " +
                                        std::to_string(upper->blocks.empty() ? n : n + 1));

        std::vector<std::uint32_t> blue, red;
        try {
            blue = detail::locate_parents(upper->blocks, lower.blocks, mode,
                                          "level " + std::to_string(n));
        } catch (const detail::ParentError& e) {
            throw std::invalid_argument("not h-refined at level " + std::to_string(n + 1) +
                                        ": " + e.what());
        }

        // Red edges land in h^s(P_n) with s = +1 for even n, -1 for odd n;
        // h-refinement also demands containment in the opposite-sign family,
        // so both are located (the opposite side only as a check).
        long long s = (n % 2 == 0) ? +1 : -1;
        std::vector<ClopenSet> forward, backward;
        forward.reserve(upper->blocks.size());
        backward.reserve(upper->blocks.size());
        for (const ClopenSet& z : upper->blocks) {
            forward.push_back(seq.h.image(z, s));
            backward.push_back(seq.h.image(z, -s));
        }
        try {
            red = detail::locate_parents(forward, lower.blocks, mode,
                                         "h^" + std::to_string(s) + "(level " +
                                             std::to_string(n) + ")");
            detail::locate_parents(backward, lower.blocks, mode,
                                   "h^" + std::to_string(-s) + "(level " +
                                       std::to_string(n) + ")");
        } catch (const detail::ParentError& e) {
            throw std::invalid_argument("not h-refined at level " + std::to_string(n + 1) +
                                        ": " + e.what());
        }

        DiagramLevel L;
        L.upper_size = std::uint32_t(upper->blocks.size());
        L.lower_size = std::uint32_t(lower.blocks.size());
        L.blue_parent = std::move(blue);
        L.red_parent = std::move(red);
        d.levels.push_back(std::move(L));
        d.labels.push_back(lower.labels());
        upper = &lower;
    }
    return d;
}

} // namespace hdiag

#endif // HDIAG_CONSTRUCTION_HPP
