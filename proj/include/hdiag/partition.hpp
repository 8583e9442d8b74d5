#ifndef HDIAG_PARTITION_HPP
#define HDIAG_PARTITION_HPP

// Clopen partitions, the wedge (common refinement), refinement checks, and the
// partition sequences the diagrams are built from — including the four
// canonical sequences (one per built-in system).

#include "clopen.hpp"
#include "systems.hpp"

#include <deque>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdiag {

struct Partition {
    std::vector<ClopenSet> blocks;
    int level_tag = 0;

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(blocks.size());
        for (const ClopenSet& b : blocks) out.push_back(print_label(b));
        return out;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.blocks == b.blocks;
    }

    // Set-of-blocks equality, ignoring order.
    bool same_blocks(const Partition& other) const {
        if (blocks.size() != other.blocks.size()) return false;
        std::vector<ClopenSet> a = blocks, b = other.blocks;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }
};

// Pairwise disjoint, nonempty, and covering — verified exactly.
inline std::vector<std::string> validate_partition(const Partition& p) {
    std::vector<std::string> violations;
    if (p.blocks.empty()) { violations.push_back("partition has no blocks"); return violations; }
    Backend bk = p.blocks.front().backend;
    for (const ClopenSet& z : p.blocks)
        if (z.backend != bk) { violations.push_back("mixed backends"); return violations; }
    ClopenSet acc = ClopenSet::empty(bk);
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        const ClopenSet& z = p.blocks[i];
        if (z.is_empty())
            violations.push_back("block " + std::to_string(i) + " is empty");
        for (std::size_t j = i + 1; j < p.blocks.size(); ++j)
            if (!is_empty(intersect(z, p.blocks[j])))
                violations.push_back("blocks " + std::to_string(i) + " and " +
                                     std::to_string(j) + " overlap");
        acc = unite(acc, z);
    }
    if (!acc.is_whole())
        violations.push_back("blocks do not cover the whole space");
    return violations;
}

// Every block of `fine` inside exactly one block of `coarse`?
// (Uniqueness is automatic once the coarse family is disjoint.)
inline bool refines(const Partition& fine, const Partition& coarse) {
    for (const ClopenSet& z : fine.blocks) {
        bool found = false;
        for (const ClopenSet& c : coarse.blocks)
            if (contains(c, z)) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

// The index of the unique block of `p` containing `z`, or -1.
inline int containing_block(const Partition& p, const ClopenSet& z) {
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        if (contains(p.blocks[i], z)) return int(i);
    return -1;
}

// All nonempty intersections across the given partitions, in the
// backend-canonical order (word-lexicographic for cylinder backends; numeric
// singletons first, cofinite last for the integer backend).
inline Partition wedge(const std::vector<Partition>& parts) {
    if (parts.empty()) throw std::invalid_argument("wedge of nothing");
    Backend bk = parts.front().blocks.at(0).backend;
    for (const Partition& p : parts)
        for (const ClopenSet& z : p.blocks) require_same_backend(p.blocks.front(), z);
    for (const Partition& p : parts)
        if (p.blocks.front().backend != bk)
            throw std::invalid_argument("backend mismatch across wedge factors");

    std::vector<ClopenSet> acc = {ClopenSet::whole(bk)};
    for (const Partition& p : parts) {
        std::vector<ClopenSet> next;
        for (const ClopenSet& a : acc)
            for (const ClopenSet& b : p.blocks) {
                ClopenSet cut = intersect(a, b);
                if (!cut.is_empty()) next.push_back(std::move(cut));
            }
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    // deterministic tie-break: lexicographic on canonical labels
    std::sort(acc.begin(), acc.end(), [](const ClopenSet& a, const ClopenSet& b) {
        return print_label(a) < print_label(b);
    });
    Partition out;
    out.blocks = std::move(acc);
    out.level_tag = parts.front().level_tag;
    return out;
}

// Image of a whole partition (blockwise), re-sorted canonically.
inline Partition image_partition(const Homeomorphism& h, const Partition& p, long long power) {
    Partition out;
    out.level_tag = p.level_tag;
    out.blocks.reserve(p.blocks.size());
    for (const ClopenSet& z : p.blocks) out.blocks.push_back(h.image(z, power));
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

// One refinement step: wedge of the next base partition, the previous level,
// and the previous level pushed through h and h^-1. The result is finer than
// prev, h(prev) and h^-1(prev) by construction.
inline Partition h_refine_step(const Partition& prev, const Partition& next_base,
                               const Homeomorphism& h) {
    Partition out = wedge({next_base, prev,
                           image_partition(h, prev, +1),
                           image_partition(h, prev, -1)});
    out.level_tag = prev.level_tag + 1;
    return out;
}

// A lazily realized sequence P_0, P_1, ... together with its homeomorphism.
struct PartitionSequence {
    Homeomorphism h;
    std::function<Partition(int)> make;
    // deque, not vector: references returned by level() must stay valid while
    // deeper levels are realized — callers routinely hold one level while
    // asking for another
    mutable std::deque<Partition> cache;

    const Partition& level(int n) const {
        if (n < 0) throw std::out_of_range("partition level must be >= 0");
        while (int(cache.size()) <= n) {
            Partition p = make(int(cache.size()));
            p.level_tag = int(cache.size());
            cache.push_back(std::move(p));
        }
        return cache[std::size_t(n)];
    }

    // A sequence refined step-by-step from explicit base partitions:
    // P_0 = {X}, P_{n+1} = wedge(base_{n+1}, P_n, h P_n, h^-1 P_n).
    static PartitionSequence from_bases(Homeomorphism h, std::vector<Partition> bases) {
        PartitionSequence seq;
        seq.h = h;
        auto shared = std::make_shared<std::vector<Partition>>(std::move(bases));
        // The generator keeps its own realized-prefix cache so it stays valid
        // however the PartitionSequence itself is copied or moved.
        auto own = std::make_shared<std::vector<Partition>>();
        seq.make = [h, shared, own](int n) -> Partition {
            while (int(own->size()) <= n) {
                int k = int(own->size());
                if (k == 0) {
                    Partition p;
                    p.blocks = {ClopenSet::whole(system_backend(h.kind))};
                    p.level_tag = 0;
                    own->push_back(std::move(p));
                    continue;
                }
                const Partition& prev = own->back();
                const Partition& base = (k - 1 < int(shared->size()))
                                            ? shared->at(std::size_t(k - 1))
                                            : prev; // bases exhausted: refine by h alone
                own->push_back(h_refine_step(prev, base, h));
                own->back().level_tag = k;
            }
            return own->at(std::size_t(n));
        };
        return seq;
    }

    // Arbitrary explicit levels, no refinement performed (for defect tests and
    // externally supplied sequences; build_diagram re-checks what it needs).
    static PartitionSequence raw(Homeomorphism h, std::vector<Partition> levels) {
        PartitionSequence seq;
        seq.h = h;
        auto shared = std::make_shared<std::vector<Partition>>(std::move(levels));
        seq.make = [shared](int n) -> Partition {
            if (n >= int(shared->size()))
                throw std::out_of_range("raw sequence has no level " + std::to_string(n));
            return shared->at(std::size_t(n));
        };
        return seq;
    }
};

namespace detail {

inline std::vector<std::string> all_words(int len) {
    std::vector<std::string> out;
    if (len == 0) { out.push_back(""); return out; }
    if (len > 24) throw std::out_of_range("word enumeration too large");
    out.reserve(std::size_t(1) << len);
    for (unsigned v = 0; v < (1u << len); ++v) {
        std::string w(std::size_t(len), '0');
        for (int i = 0; i < len; ++i)
            if (v & (1u << (len - 1 - i))) w[std::size_t(i)] = '1';
        out.push_back(std::move(w));
    }
    return out; // already lexicographically sorted
}

} // namespace detail

// The four canonical sequences:
//   shift / bitwise-not : P_0 = {X}, P_n = all cylinders over window
//                         [-(n-1), n-1], word-lexicographic.
//   odometer            : P_n = all one-sided cylinders of length n,
//                         word-lexicographic.
//   zstar               : P_0 = {X}, P_n = {{j} : |j| <= n-1} u {V(n-1)},
//                         singletons ascending, V last.
inline PartitionSequence canonical_sequence(SystemKind kind) {
    PartitionSequence seq;
    seq.h = make_system(kind);
    switch (kind) {
        case SystemKind::Shift:
        case SystemKind::BitwiseNot:
            seq.make = [](int n) {
                Partition p;
                if (n == 0) { p.blocks = {ClopenSet::whole(Backend::TwoSided)}; return p; }
                for (std::string& w : detail::all_words(2 * n - 1))
                    p.blocks.push_back(ClopenSet::two_sided(n - 1, {std::move(w)}));
                return p;
            };
            break;
        case SystemKind::Odometer:
            seq.make = [](int n) {
                Partition p;
                if (n == 0) { p.blocks = {ClopenSet::whole(Backend::OneSided)}; return p; }
                for (std::string& w : detail::all_words(n))
                    p.blocks.push_back(ClopenSet::one_sided(n, {std::move(w)}));
                return p;
            };
            break;
        case SystemKind::ZStar:
            seq.make = [](int n) {
                Partition p;
                if (n == 0) { p.blocks = {ClopenSet::whole(Backend::Integer)}; return p; }
                for (long long j = -(n - 1); j <= n - 1; ++j)
                    p.blocks.push_back(ClopenSet::finite_ints({j}));
                std::vector<long long> excl;
                for (long long v = -(n - 1); v <= n - 1; ++v) excl.push_back(v);
                p.blocks.push_back(ClopenSet::cofinite_ints(std::move(excl)));
                return p;
            };
            break;
    }
    return seq;
}

} // namespace hdiag

#endif // HDIAG_PARTITION_HPP
