#ifndef HDIAG_SYSTEMS_HPP
#define HDIAG_SYSTEMS_HPP

// The four built-in homeomorphisms, each acting exactly on its backend's
// clopen sets:
//
//   Shift       two-sided shift sigma(x)_i = x_{i+1}          (two-sided words)
//   BitwiseNot  tau(x)_i = 1 - x_i, an involution             (two-sided words)
//   Odometer    binary add-one-with-carry, least bit first    (one-sided words)
//   ZStar       add(n) = n + 1 on Z u {inf}, add(inf) = inf   (integer sets)
//
// image(h, Z, p) computes h^p(Z) for any p in Z; image followed by the inverse
// power is the identity on every representable set.

#include "clopen.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hdiag {

enum class SystemKind { Shift, BitwiseNot, Odometer, ZStar };

inline const char* system_name(SystemKind k) {
    switch (k) {
        case SystemKind::Shift:      return "shift";
        case SystemKind::BitwiseNot: return "bitwise-not";
        case SystemKind::Odometer:   return "odometer";
        case SystemKind::ZStar:      return "zstar";
    }
    return "?";
}

inline Backend system_backend(SystemKind k) {
    switch (k) {
        case SystemKind::Shift:
        case SystemKind::BitwiseNot: return Backend::TwoSided;
        case SystemKind::Odometer:   return Backend::OneSided;
        case SystemKind::ZStar:      return Backend::Integer;
    }
    throw std::invalid_argument("unknown system");
}

namespace detail {

// sigma^p of a union of cylinders: the constraint x_j = w_j becomes a
// constraint on position j - p; re-house on the smallest symmetric window.
inline ClopenSet shift_image(const ClopenSet& z, long long p) {
    if (z.is_empty() || p == 0) return z;
    int r = z.window;
    if (p > 12 || p < -12)
        throw std::out_of_range("shift image: |power| > 12 would need 2^(2|p|)-fold "
                                "word enumeration");
    int ap = int(p < 0 ? -p : p);
    int nr = r + ap; // new radius; constrained span [-r-p, r-p] fits inside
    std::vector<std::string> out;
    out.reserve(z.words.size() << (2 * ap));
    int len = 2 * nr + 1;
    long long lo = -(long long)r - p; // leftmost constrained position
    for (const std::string& w : z.words) {
        // enumerate the 2*ap free positions around the translated block
        int free_total = 2 * ap;
        for (unsigned fill = 0; fill < (1u << free_total); ++fill) {
            std::string u(std::size_t(len), '?');
            int bit = 0;
            for (int q = -nr; q <= nr; ++q) {
                long long src = q - lo; // index into w if inside the span
                if (src >= 0 && src < (long long)w.size())
                    u[std::size_t(q + nr)] = w[std::size_t(src)];
                else
                    u[std::size_t(q + nr)] = char('0' + ((fill >> bit++) & 1u));
            }
            out.push_back(std::move(u));
        }
    }
    return ClopenSet::two_sided(nr, std::move(out));
}

inline ClopenSet not_image(const ClopenSet& z, long long p) {
    if ((p & 1) == 0 || z.is_empty()) return z; // tau^2 = id
    std::vector<std::string> out;
    out.reserve(z.words.size());
    for (std::string w : z.words) {
        for (char& c : w) c = (c == '0') ? '1' : '0';
        out.push_back(std::move(w));
    }
    return ClopenSet::two_sided(z.window, std::move(out));
}

// ad^p of a one-sided cylinder [e0..e_{L-1}] is the cylinder of
// (value + p) mod 2^L at the same length: carries past position L-1 only
// permute the (free) tail, and the least-significant-first value add is exact.
inline ClopenSet odometer_image(const ClopenSet& z, long long p) {
    if (z.is_empty() || p == 0) return z;
    int L = z.window;
    if (L == 0) return z; // whole space
    if (L > 62) throw std::out_of_range("odometer image: window too long");
    long long mod = 1ll << L;
    long long shift = ((p % mod) + mod) % mod;
    std::vector<std::string> out;
    out.reserve(z.words.size());
    for (const std::string& w : z.words) {
        long long v = 0;
        for (int i = 0; i < L; ++i)
            if (w[std::size_t(i)] == '1') v |= (1ll << i);
        v = (v + shift) % mod;
        std::string u(std::size_t(L), '0');
        for (int i = 0; i < L; ++i)
            if (v & (1ll << i)) u[std::size_t(i)] = '1';
        out.push_back(std::move(u));
    }
    return ClopenSet::one_sided(L, std::move(out));
}

inline ClopenSet zstar_image(const ClopenSet& z, long long p) {
    if (p == 0) return z;
    ClopenSet out = z;
    for (long long& v : out.ints) v += p; // members or excluded both translate
    out.canonicalize();
    return out;
}

} // namespace detail

struct Homeomorphism {
    SystemKind kind = SystemKind::Shift;

    Backend backend() const { return system_backend(kind); }

    ClopenSet image(const ClopenSet& z, long long power = 1) const {
        if (z.backend != backend())
            throw std::invalid_argument(std::string("backend mismatch: ") +
                                        system_name(kind) + " acts on " +
                                        backend_name(backend()) + " sets, got " +
                                        backend_name(z.backend));
        switch (kind) {
            case SystemKind::Shift:      return detail::shift_image(z, power);
            case SystemKind::BitwiseNot: return detail::not_image(z, power);
            case SystemKind::Odometer:   return detail::odometer_image(z, power);
            case SystemKind::ZStar:      return detail::zstar_image(z, power);
        }
        throw std::invalid_argument("unknown system");
    }

    ClopenSet preimage(const ClopenSet& z, long long power = 1) const {
        return image(z, -power);
    }
};

inline Homeomorphism make_system(SystemKind k) { return Homeomorphism{k}; }

} // namespace hdiag

#endif // HDIAG_SYSTEMS_HPP
