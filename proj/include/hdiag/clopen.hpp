#ifndef HDIAG_CLOPEN_HPP
#define HDIAG_CLOPEN_HPP

// Finitely-described clopen subsets of the three spaces the library works on:
//
//   TwoSided  — {0,1}^Z   : union of cylinders over a symmetric window [-r, r],
//                           stored as the set of admissible words of length 2r+1.
//   OneSided  — {0,1}^N   : union of cylinders over the window [0, L-1], stored
//                           as the set of admissible words of length L.
//   Integer   — Z u {inf} : a finite set of integers, or the complement of one
//                           (every cofinite set contains inf).
//
// Sets are canonicalized on construction (minimal window, sorted unique word
// lists, finite/cofinite normal form), so structural equality is semantic
// equality. All operations are exact.

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdiag {

enum class Backend { TwoSided, OneSided, Integer };

inline const char* backend_name(Backend b) {
    switch (b) {
        case Backend::TwoSided: return "two-sided";
        case Backend::OneSided: return "one-sided";
        case Backend::Integer:  return "integer";
    }
    return "?";
}

struct ClopenSet {
    Backend backend = Backend::TwoSided;

    // Cylinder backends: `window` is the radius r (two-sided, word length 2r+1)
    // or the word length L (one-sided). `words` is sorted and duplicate-free.
    int window = 0;
    std::vector<std::string> words;

    // Integer backend: members if !cofinite, excluded integers if cofinite.
    bool cofinite = false;
    std::vector<long long> ints;

    // ---- constructors ------------------------------------------------------

    static ClopenSet two_sided(int radius, std::vector<std::string> ws) {
        ClopenSet z;
        z.backend = Backend::TwoSided;
        z.window = radius;
        z.words = std::move(ws);
        z.check_word_lengths(2 * radius + 1);
        z.canonicalize();
        return z;
    }

    static ClopenSet one_sided(int length, std::vector<std::string> ws) {
        ClopenSet z;
        z.backend = Backend::OneSided;
        z.window = length;
        z.words = std::move(ws);
        z.check_word_lengths(length);
        z.canonicalize();
        return z;
    }

    static ClopenSet finite_ints(std::vector<long long> members) {
        ClopenSet z;
        z.backend = Backend::Integer;
        z.cofinite = false;
        z.ints = std::move(members);
        z.canonicalize();
        return z;
    }

    static ClopenSet cofinite_ints(std::vector<long long> excluded) {
        ClopenSet z;
        z.backend = Backend::Integer;
        z.cofinite = true;
        z.ints = std::move(excluded);
        z.canonicalize();
        return z;
    }

    static ClopenSet whole(Backend b) {
        switch (b) {
            case Backend::TwoSided: return two_sided(0, {"0", "1"});
            case Backend::OneSided: return one_sided(0, {""});
            case Backend::Integer:  return cofinite_ints({});
        }
        throw std::invalid_argument("unknown backend");
    }

    static ClopenSet empty(Backend b) {
        switch (b) {
            case Backend::TwoSided: return two_sided(0, {});
            case Backend::OneSided: return one_sided(0, {});
            case Backend::Integer:  return finite_ints({});
        }
        throw std::invalid_argument("unknown backend");
    }

    // ---- basic queries -----------------------------------------------------

    bool is_cylinder_backend() const { return backend != Backend::Integer; }

    bool is_empty() const {
        if (backend == Backend::Integer) return !cofinite && ints.empty();
        return words.empty();
    }

    bool is_whole() const {
        switch (backend) {
            case Backend::TwoSided: return window == 0 && words.size() == 2;
            case Backend::OneSided: return window == 0 && words.size() == 1;
            case Backend::Integer:  return cofinite && ints.empty();
        }
        return false;
    }

    friend bool operator==(const ClopenSet& a, const ClopenSet& b) {
        if (a.backend != b.backend) return false;
        if (a.backend == Backend::Integer)
            return a.cofinite == b.cofinite && a.ints == b.ints;
        return a.window == b.window && a.words == b.words;
    }
    friend bool operator!=(const ClopenSet& a, const ClopenSet& b) { return !(a == b); }

    // Total order used for deterministic block listings (canonical forms only).
    // Integer backend: finite sets ascending by members, cofinite sets last —
    // this keeps partition listings like {-1},{0},{1},V(1) in numeric order.
    friend bool operator<(const ClopenSet& a, const ClopenSet& b) {
        if (a.backend != b.backend) return a.backend < b.backend;
        if (a.backend == Backend::Integer) {
            if (a.cofinite != b.cofinite) return !a.cofinite;
            return a.ints < b.ints;
        }
        if (a.window != b.window) return a.window < b.window;
        return a.words < b.words;
    }

    // ---- membership (cylinder backends; used by oracles and point location) --

    // Membership of the point determined by `word` (given at radius/length
    // `at_window` >= this->window): restrict to our window and look up.
    bool member_word(const std::string& word, int at_window) const {
        if (backend == Backend::Integer)
            throw std::invalid_argument("member_word: integer backend");
        if (at_window < window)
            throw std::invalid_argument("member_word: word window too narrow");
        std::string r = restrict_word(word, at_window, window, backend);
        return std::binary_search(words.begin(), words.end(), r);
    }

    bool member_int(long long v) const {
        if (backend != Backend::Integer)
            throw std::invalid_argument("member_int: cylinder backend");
        bool listed = std::binary_search(ints.begin(), ints.end(), v);
        return cofinite ? !listed : listed;
    }

    bool member_infinity() const {
        if (backend != Backend::Integer)
            throw std::invalid_argument("member_infinity: cylinder backend");
        return cofinite;
    }

    // ---- window plumbing ---------------------------------------------------

    // Re-express at a wider window; membership is unchanged. Exponential in the
    // widening amount, which stays tiny at the library's working scales.
    ClopenSet widened(int to_window) const {
        if (backend == Backend::Integer)
            throw std::invalid_argument("widened: integer backend");
        if (to_window < window)
            throw std::invalid_argument("widened: target window narrower than current");
        if (to_window == window) return *this;
        int left = (backend == Backend::TwoSided) ? (to_window - window) : 0;
        int right = (backend == Backend::TwoSided) ? (to_window - window)
                                                   : (to_window - window);
        std::vector<std::string> out;
        out.reserve(words.size() << (left + right));
        std::string buf;
        for (const std::string& w : words) {
            buf.assign(std::size_t(left), '0');
            buf += w;
            buf.append(std::size_t(right), '0');
            enumerate_free(buf, 0, left, out, std::size_t(left) + w.size(), right);
        }
        ClopenSet z = *this;
        z.window = to_window;
        z.words = std::move(out);
        std::sort(z.words.begin(), z.words.end());
        return z;
    }

    // Restriction of a word given at window `from` down to window `to`.
    static std::string restrict_word(const std::string& w, int from, int to, Backend b) {
        if (b == Backend::TwoSided) {
            // positions [-from, from] -> keep [-to, to]
            return w.substr(std::size_t(from - to), std::size_t(2 * to + 1));
        }
        return w.substr(0, std::size_t(to));
    }

    // A concrete point of the set, encoded as a word at window `at_window`
    // (>= canonical window): first admissible word padded with zeros.
    std::string representative_word(int at_window) const {
        if (backend == Backend::Integer)
            throw std::invalid_argument("representative_word: integer backend");
        if (is_empty()) throw std::invalid_argument("representative_word: empty set");
        if (at_window < window)
            throw std::invalid_argument("representative_word: window too narrow");
        int left = (backend == Backend::TwoSided) ? (at_window - window) : 0;
        int right = at_window - window;
        std::string r(std::size_t(left), '0');
        r += words.front();
        r.append(std::size_t(right), '0');
        return r;
    }

    // ---- canonical form ----------------------------------------------------

    void canonicalize() {
        if (backend == Backend::Integer) {
            std::sort(ints.begin(), ints.end());
            ints.erase(std::unique(ints.begin(), ints.end()), ints.end());
            return;
        }
        std::sort(words.begin(), words.end());
        words.erase(std::unique(words.begin(), words.end()), words.end());
        if (words.empty()) { window = 0; return; }
        if (backend == Backend::TwoSided) {
            while (window > 0 && reduce_two_sided_once()) {}
        } else {
            while (window > 0 && reduce_one_sided_once()) {}
        }
    }

  private:
    void check_word_lengths(int expect) const {
        for (const std::string& w : words) {
            if (int(w.size()) != expect)
                throw std::invalid_argument("clopen word has wrong length for its window");
            for (char c : w)
                if (c != '0' && c != '1')
                    throw std::invalid_argument("clopen word has symbols outside {0,1}");
        }
    }

    static void enumerate_free(std::string& buf, std::size_t lpos, int lleft,
                               std::vector<std::string>& out,
                               std::size_t rstart, int rleft) {
        // Enumerate all fillings of the `lleft` positions starting at lpos and
        // the `rleft` positions starting at rstart.
        if (lleft > 0) {
            buf[lpos] = '0';
            enumerate_free(buf, lpos + 1, lleft - 1, out, rstart, rleft);
            buf[lpos] = '1';
            enumerate_free(buf, lpos + 1, lleft - 1, out, rstart, rleft);
            return;
        }
        if (rleft > 0) {
            buf[rstart] = '0';
            enumerate_free(buf, lpos, 0, out, rstart + 1, rleft - 1);
            buf[rstart] = '1';
            enumerate_free(buf, lpos, 0, out, rstart + 1, rleft - 1);
            return;
        }
        out.push_back(buf);
    }

    // Membership independent of both outermost positions? Then drop them.
    bool reduce_two_sided_once() {
        std::map<std::string, unsigned> middles;
        for (const std::string& w : words) {
            unsigned bit = unsigned((w.front() - '0') << 1 | (w.back() - '0'));
            middles[w.substr(1, w.size() - 2)] |= (1u << bit);
        }
        for (const auto& [mid, mask] : middles)
            if (mask != 0xFu) return false;
        words.clear();
        for (auto& [mid, mask] : middles) words.push_back(mid);
        window -= 1;
        return true;
    }

    // Membership independent of the last position? Then drop it.
    bool reduce_one_sided_once() {
        std::map<std::string, unsigned> prefixes;
        for (const std::string& w : words)
            prefixes[w.substr(0, w.size() - 1)] |= (1u << unsigned(w.back() - '0'));
        for (const auto& [pre, mask] : prefixes)
            if (mask != 0x3u) return false;
        words.clear();
        for (auto& [pre, mask] : prefixes) words.push_back(pre);
        window -= 1;
        return true;
    }
};

// ---- boolean algebra --------------------------------------------------------

inline void require_same_backend(const ClopenSet& a, const ClopenSet& b) {
    if (a.backend != b.backend)
        throw std::invalid_argument(std::string("backend mismatch: ") +
                                    backend_name(a.backend) + " vs " +
                                    backend_name(b.backend));
}

inline ClopenSet intersect(const ClopenSet& a, const ClopenSet& b) {
    require_same_backend(a, b);
    if (a.backend == Backend::Integer) {
        ClopenSet z;
        z.backend = Backend::Integer;
        if (!a.cofinite && !b.cofinite) {
            std::set_intersection(a.ints.begin(), a.ints.end(),
                                  b.ints.begin(), b.ints.end(),
                                  std::back_inserter(z.ints));
        } else if (a.cofinite && b.cofinite) {
            z.cofinite = true;
            std::set_union(a.ints.begin(), a.ints.end(),
                           b.ints.begin(), b.ints.end(),
                           std::back_inserter(z.ints));
        } else {
            const ClopenSet& fin = a.cofinite ? b : a;
            const ClopenSet& cof = a.cofinite ? a : b;
            std::set_difference(fin.ints.begin(), fin.ints.end(),
                                cof.ints.begin(), cof.ints.end(),
                                std::back_inserter(z.ints));
        }
        z.canonicalize();
        return z;
    }
    if (a.is_empty() || b.is_empty()) return ClopenSet::empty(a.backend);
    int w = std::max(a.window, b.window);
    ClopenSet wa = a.widened(w), wb = b.widened(w);
    std::vector<std::string> out;
    std::set_intersection(wa.words.begin(), wa.words.end(),
                          wb.words.begin(), wb.words.end(),
                          std::back_inserter(out));
    return a.backend == Backend::TwoSided ? ClopenSet::two_sided(w, std::move(out))
                                          : ClopenSet::one_sided(w, std::move(out));
}

inline ClopenSet unite(const ClopenSet& a, const ClopenSet& b) {
    require_same_backend(a, b);
    if (a.backend == Backend::Integer) {
        ClopenSet z;
        z.backend = Backend::Integer;
        if (!a.cofinite && !b.cofinite) {
            std::set_union(a.ints.begin(), a.ints.end(),
                           b.ints.begin(), b.ints.end(),
                           std::back_inserter(z.ints));
        } else if (a.cofinite && b.cofinite) {
            z.cofinite = true;
            std::set_intersection(a.ints.begin(), a.ints.end(),
                                  b.ints.begin(), b.ints.end(),
                                  std::back_inserter(z.ints));
        } else {
            const ClopenSet& fin = a.cofinite ? b : a;
            const ClopenSet& cof = a.cofinite ? a : b;
            z.cofinite = true;
            std::set_difference(cof.ints.begin(), cof.ints.end(),
                                fin.ints.begin(), fin.ints.end(),
                                std::back_inserter(z.ints));
        }
        z.canonicalize();
        return z;
    }
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    int w = std::max(a.window, b.window);
    ClopenSet wa = a.widened(w), wb = b.widened(w);
    std::vector<std::string> out;
    std::set_union(wa.words.begin(), wa.words.end(),
                   wb.words.begin(), wb.words.end(),
                   std::back_inserter(out));
    return a.backend == Backend::TwoSided ? ClopenSet::two_sided(w, std::move(out))
                                          : ClopenSet::one_sided(w, std::move(out));
}

// b subseteq a?
inline bool contains(const ClopenSet& a, const ClopenSet& b) {
    require_same_backend(a, b);
    if (a.backend == Backend::Integer) {
        if (!a.cofinite && !b.cofinite)
            return std::includes(a.ints.begin(), a.ints.end(),
                                 b.ints.begin(), b.ints.end());
        if (a.cofinite && !b.cofinite) {
            for (long long v : b.ints)
                if (std::binary_search(a.ints.begin(), a.ints.end(), v)) return false;
            return true;
        }
        if (!a.cofinite && b.cofinite) return false; // finite can't cover cofinite
        return std::includes(b.ints.begin(), b.ints.end(),
                             a.ints.begin(), a.ints.end()); // excl(a) subseteq excl(b)
    }
    if (b.is_empty()) return true;
    if (a.is_empty()) return false;
    // Membership in `a` only depends on a's window, so test each word of `b`
    // (widened if needed) by restriction — no need to widen `a`.
    if (b.window >= a.window) {
        for (const std::string& w : b.words)
            if (!a.member_word(w, b.window)) return false;
        return true;
    }
    ClopenSet wb = b.widened(a.window);
    for (const std::string& w : wb.words)
        if (!a.member_word(w, a.window)) return false;
    return true;
}

inline bool is_empty(const ClopenSet& z) { return z.is_empty(); }

// ---- metric diameters (exact; used for reporting and shrinkage checks) ------

namespace detail {

// d(x,y) = 2^-N with N the smallest |i| (two-sided) or smallest i (one-sided)
// where x and y disagree. For two words of one union at the canonical window:
// any points they describe realize the words' first disagreement exactly.
inline Rational cylinder_pair_distance(const std::string& w1, const std::string& w2,
                                       int window, Backend b) {
    if (b == Backend::TwoSided) {
        int r = window;
        for (int off = 0; off <= r; ++off) {
            if (w1[std::size_t(r + off)] != w2[std::size_t(r + off)] ||
                w1[std::size_t(r - off)] != w2[std::size_t(r - off)])
                return Rational::pow2_inv(off);
        }
        return Rational(0); // identical words (caller handles the self case)
    }
    for (int i = 0; i < window; ++i)
        if (w1[std::size_t(i)] != w2[std::size_t(i)]) return Rational::pow2_inv(i);
    return Rational(0);
}

inline Rational integer_point_distance(long long n, long long m) {
    auto ab = [](long long v) { return v < 0 ? -v : v; };
    return Rational(ab(n - m), (1 + ab(n)) * (1 + ab(m)));
}

inline Rational integer_inf_distance(long long n) {
    return Rational(1, 1 + (n < 0 ? -n : n));
}

} // namespace detail

inline Rational diameter(const ClopenSet& z) {
    if (z.is_empty()) return Rational(0);
    if (z.backend != Backend::Integer) {
        // sup over point pairs = max over word pairs of the first-disagreement
        // distance; within one word the free tails realize 2^-(window [+1]).
        int self_exp = (z.backend == Backend::TwoSided) ? z.window + 1 : z.window;
        Rational best = (self_exp > 62) ? Rational(0) : Rational::pow2_inv(self_exp);
        for (std::size_t i = 0; i < z.words.size(); ++i)
            for (std::size_t j = i + 1; j < z.words.size(); ++j) {
                Rational d = detail::cylinder_pair_distance(z.words[i], z.words[j],
                                                            z.window, z.backend);
                if (best < d) best = d;
                if (best == Rational(1)) return best; // cannot grow further
            }
        return best;
    }
    if (!z.cofinite) {
        Rational best(0);
        for (std::size_t i = 0; i < z.ints.size(); ++i)
            for (std::size_t j = i + 1; j < z.ints.size(); ++j) {
                Rational d = detail::integer_point_distance(z.ints[i], z.ints[j]);
                if (best < d) best = d;
            }
        return best;
    }
    // Cofinite: the supremum is attained among {nearest member >= 0,
    // nearest member < 0, inf}: same-sign pairs are dominated by the inf pair,
    // and opposite-sign distance decreases as either |coordinate| grows.
    long long pos = 0;
    while (!z.member_int(pos)) ++pos;
    long long neg = -1;
    while (!z.member_int(neg)) --neg;
    Rational best = detail::integer_point_distance(pos, neg);
    Rational dpos = detail::integer_inf_distance(pos);
    Rational dneg = detail::integer_inf_distance(neg);
    if (best < dpos) best = dpos;
    if (best < dneg) best = dneg;
    return best;
}

// ---- block labels -----------------------------------------------------------
//
// Bit-exact text forms:
//   two-sided single cylinder   "01[1]01"  (zeroth symbol bracketed)
//   one-sided single cylinder   "[0]11"
//   integer singleton           "{5}", finite set "{-1,2}"
//   symmetric cofinite          "V(2)"  (= everything outside {-2..2}, plus inf)
//   general cofinite            "V{-1,3}"
//   whole space                 "X", empty set "(empty)"
//   cylinder unions             "+"-joined single-word labels at the canonical
//                               window, e.g. "0[0]1+1[1]0"

namespace detail {

// If the set is a single cylinder over a contiguous window containing position
// 0, emit that window's symbols with the zeroth bracketed; otherwise empty.
inline std::string try_single_cylinder_label(const ClopenSet& z) {
    const int len = int(z.words.front().size());
    std::vector<bool> agreed(std::size_t(len), true);
    int agreed_count = 0;
    for (int p = 0; p < len; ++p) {
        char c = z.words.front()[std::size_t(p)];
        for (const std::string& w : z.words)
            if (w[std::size_t(p)] != c) { agreed[std::size_t(p)] = false; break; }
        if (agreed[std::size_t(p)]) ++agreed_count;
    }
    int lo = 0, hi = len - 1;
    while (lo < len && !agreed[std::size_t(lo)]) ++lo;
    while (hi >= 0 && !agreed[std::size_t(hi)]) --hi;
    if (lo > hi) return {};
    for (int p = lo; p <= hi; ++p)
        if (!agreed[std::size_t(p)]) return {}; // non-contiguous agreement
    if (agreed_count != hi - lo + 1) return {};
    // all free positions must be fully enumerated
    int free_count = len - agreed_count;
    if (free_count > 30 || z.words.size() != (std::size_t(1) << free_count)) return {};
    int zero_pos = (z.backend == Backend::TwoSided) ? z.window : 0;
    if (zero_pos < lo || zero_pos > hi) return {}; // grammar brackets position 0
    std::string out;
    for (int p = lo; p <= hi; ++p) {
        if (p == zero_pos) out += '[';
        out += z.words.front()[std::size_t(p)];
        if (p == zero_pos) out += ']';
    }
    return out;
}

inline std::string full_word_label(const std::string& w, int window, Backend b) {
    int zero_pos = (b == Backend::TwoSided) ? window : 0;
    std::string out;
    for (int p = 0; p < int(w.size()); ++p) {
        if (p == zero_pos) out += '[';
        out += w[std::size_t(p)];
        if (p == zero_pos) out += ']';
    }
    return out;
}

inline std::string int_list(const std::vector<long long>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

} // namespace detail

inline std::string print_label(const ClopenSet& z) {
    if (z.is_empty()) return "(empty)";
    if (z.is_whole()) return "X";
    if (z.backend == Backend::Integer) {
        if (!z.cofinite) return "{" + detail::int_list(z.ints) + "}";
        // symmetric excluded range {-n..n}?
        long long n = z.ints.back();
        if (n >= 0 && z.ints.front() == -n && (long long)z.ints.size() == 2 * n + 1) {
            bool contiguous = true;
            for (std::size_t i = 0; i < z.ints.size(); ++i)
                if (z.ints[i] != -n + (long long)i) { contiguous = false; break; }
            if (contiguous) return "V(" + std::to_string(n) + ")";
        }
        return "V{" + detail::int_list(z.ints) + "}";
    }
    std::string single = detail::try_single_cylinder_label(z);
    if (!single.empty()) return single;
    std::string out;
    for (std::size_t i = 0; i < z.words.size(); ++i) {
        if (i) out += '+';
        out += detail::full_word_label(z.words[i], z.window, z.backend);
    }
    return out;
}

namespace detail {

inline std::vector<long long> parse_int_list(const std::string& body, const char* what) {
    std::vector<long long> out;
    std::size_t i = 0;
    while (i < body.size()) {
        std::size_t j = body.find(',', i);
        if (j == std::string::npos) j = body.size();
        std::string tok = body.substr(i, j - i);
        if (tok.empty()) throw std::invalid_argument(std::string("bad label: ") + what);
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(std::string("bad label: ") + what);
        out.push_back(v);
        i = j + 1;
    }
    return out;
}

// One "ab[c]de" token -> cylinder as a canonical set.
inline ClopenSet parse_cylinder_token(Backend b, const std::string& tok) {
    std::size_t lb = tok.find('[');
    std::size_t rb = tok.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb != lb + 2)
        throw std::invalid_argument("bad label: expected one bracketed symbol");
    std::string symbols = tok.substr(0, lb) + tok[lb + 1] + tok.substr(rb + 1);
    for (char c : symbols)
        if (c != '0' && c != '1')
            throw std::invalid_argument("bad label: symbols must be 0/1");
    if (b == Backend::OneSided) {
        if (lb != 0) throw std::invalid_argument("bad label: one-sided labels start at [e0]");
        return ClopenSet::one_sided(int(symbols.size()), {symbols});
    }
    // two-sided: lb symbols precede position 0
    int lo = -int(lb);
    int hi = int(symbols.size()) - 1 + lo;
    int radius = std::max(-lo, hi);
    // place into a symmetric word with free positions enumerated via widen()
    // trick: build at the asymmetric span then widen by constructing directly.
    std::vector<std::string> ws;
    int len = 2 * radius + 1;
    int free_left = lo + radius;              // positions [-radius, lo)
    int free_right = radius - hi;             // positions (hi, radius]
    int free_total = free_left + free_right;
    for (unsigned fill = 0; fill < (1u << free_total); ++fill) {
        std::string w(std::size_t(len), '?');
        for (int k = 0; k < free_left; ++k)
            w[std::size_t(k)] = char('0' + ((fill >> k) & 1u));
        for (int k = 0; k < free_right; ++k)
            w[std::size_t(len - 1 - k)] = char('0' + ((fill >> (free_left + k)) & 1u));
        for (int p = lo; p <= hi; ++p)
            w[std::size_t(p + radius)] = symbols[std::size_t(p - lo)];
        ws.push_back(std::move(w));
    }
    return ClopenSet::two_sided(radius, std::move(ws));
}

} // namespace detail

inline ClopenSet parse_label(Backend b, const std::string& text) {
    if (text == "X") return ClopenSet::whole(b);
    if (text == "(empty)") return ClopenSet::empty(b);
    if (b == Backend::Integer) {
        if (text.size() >= 2 && text.front() == '{' && text.back() == '}')
            return ClopenSet::finite_ints(
                detail::parse_int_list(text.substr(1, text.size() - 2), "finite set"));
        if (text.size() >= 4 && text.rfind("V(", 0) == 0 && text.back() == ')') {
            std::string body = text.substr(2, text.size() - 3);
            std::size_t used = 0;
            long long n = std::stoll(body, &used);
            if (used != body.size() || n < 0)
                throw std::invalid_argument("bad label: V(n) needs n >= 0");
            std::vector<long long> excl;
            for (long long v = -n; v <= n; ++v) excl.push_back(v);
            return ClopenSet::cofinite_ints(std::move(excl));
        }
        if (text.size() >= 3 && text.rfind("V{", 0) == 0 && text.back() == '}')
            return ClopenSet::cofinite_ints(
                detail::parse_int_list(text.substr(2, text.size() - 3), "cofinite set"));
        throw std::invalid_argument("bad label: unrecognized integer-set form: " + text);
    }
    // cylinder backends: "+"-joined cylinder tokens
    ClopenSet acc = ClopenSet::empty(b);
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find('+', i);
        if (j == std::string::npos) j = text.size();
        acc = unite(acc, detail::parse_cylinder_token(b, text.substr(i, j - i)));
        i = j + 1;
        if (j == text.size()) break;
    }
    return acc;
}

} // namespace hdiag

#endif // HDIAG_CLOPEN_HPP
