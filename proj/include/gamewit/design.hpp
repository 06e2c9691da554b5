// Combinatorial designs for the NW generator, built from polynomial graphs
// over a prime field: the universe is F_q x F_q, and the set indexed by a
// polynomial p of degree <= deg is its graph {(a, p(a))}. Two distinct
// polynomials agree on at most deg points, which bounds the intersections.

#ifndef GAMEWIT_DESIGN_HPP
#define GAMEWIT_DESIGN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gamewit/util.hpp"

namespace gamewit {

struct Design {
    int m = 0;                            // universe size
    int set_size = 0;                     // ell
    int intersection_bound = 0;           // a
    std::vector<std::vector<int>> sets;   // sorted index lists into [m]
};

inline bool is_prime(int q) {
    if (q < 2) return false;
    for (int p = 2; p * p <= q; ++p)
        if (q % p == 0) return false;
    return true;
}

inline Design make_design(int q, int deg) {
    if (!is_prime(q)) throw InputError("make_design: q must be prime");
    if (deg < 0 || deg >= q) throw InputError("make_design: degree bound must satisfy 0 <= deg < q");
    Design d;
    d.m = q * q;
    d.set_size = q;
    d.intersection_bound = deg;
    long long count = 1;
    for (int i = 0; i <= deg; ++i) count *= q;  // q^(deg+1) polynomials
    d.sets.reserve(static_cast<std::size_t>(count));
    std::vector<int> coeff(deg + 1, 0);
    for (long long idx = 0; idx < count; ++idx) {
        long long rest = idx;
        for (int i = 0; i <= deg; ++i) {
            coeff[i] = static_cast<int>(rest % q);
            rest /= q;
        }
        std::vector<int> set;
        set.reserve(q);
        for (int a = 0; a < q; ++a) {
            long long v = 0;
            for (int i = deg; i >= 0; --i) v = (v * a + coeff[i]) % q;
            set.push_back(a * q + static_cast<int>(v));  // (a, p(a))
        }
        d.sets.push_back(std::move(set));
    }
    return d;
}

struct DesignViolation {
    std::size_t i, j;  // offending pair (i == j flags a malformed single set)
    std::string reason;
};

inline std::optional<DesignViolation> verify_design(const Design& d) {
    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        const auto& s = d.sets[i];
        if (static_cast<int>(s.size()) != d.set_size)
            return DesignViolation{i, i, "set has the wrong size"};
        for (std::size_t u = 0; u < s.size(); ++u) {
            if (s[u] < 0 || s[u] >= d.m) return DesignViolation{i, i, "element outside the universe"};
            if (u > 0 && s[u] <= s[u - 1]) return DesignViolation{i, i, "set not strictly sorted"};
        }
    }
    for (std::size_t i = 0; i < d.sets.size(); ++i)
        for (std::size_t j = i + 1; j < d.sets.size(); ++j) {
            int common = 0;
            std::size_t u = 0, v = 0;
            while (u < d.sets[i].size() && v < d.sets[j].size()) {
                if (d.sets[i][u] == d.sets[j][v]) {
                    ++common;
                    ++u;
                    ++v;
                } else if (d.sets[i][u] < d.sets[j][v]) {
                    ++u;
                } else {
                    ++v;
                }
            }
            if (common > d.intersection_bound)
                return DesignViolation{i, j, "intersection of size " + std::to_string(common) +
                                                 " exceeds the bound"};
        }
    return std::nullopt;
}

// ── NW indexing ─────────────────────────────────────────────────────────────
// J_x is the x-th set. r_x(a, u) assembles a seed w with w|_{J_x} = u and the
// remaining coordinates (in increasing order) taken from a.

inline std::vector<std::uint8_t> nw_assemble(const Design& d, std::size_t x,
                                             const std::vector<std::uint8_t>& off_jx,
                                             const std::vector<std::uint8_t>& on_jx) {
    const auto& jx = d.sets.at(x);
    if (static_cast<int>(on_jx.size()) != d.set_size ||
        static_cast<int>(off_jx.size()) != d.m - d.set_size)
        throw InputError("nw_assemble: part lengths do not match the design");
    std::vector<std::uint8_t> w(d.m, 0);
    std::vector<bool> used(d.m, false);
    for (std::size_t i = 0; i < jx.size(); ++i) {
        w[jx[i]] = on_jx[i];
        used[jx[i]] = true;
    }
    std::size_t ai = 0;
    for (int pos = 0; pos < d.m; ++pos)
        if (!used[pos]) w[pos] = off_jx[ai++];
    return w;
}

// h applied to w restricted to each set: the generator's output bits.
template <typename H>
inline std::vector<std::uint8_t> nw_eval(H&& h, const Design& d, const std::vector<std::uint8_t>& w) {
    if (static_cast<int>(w.size()) != d.m) throw InputError("nw_eval: seed length mismatch");
    std::vector<std::uint8_t> out;
    out.reserve(d.sets.size());
    for (const auto& s : d.sets) {
        std::vector<std::uint8_t> slice;
        slice.reserve(s.size());
        for (int idx : s) slice.push_back(w[idx]);
        out.push_back(h(slice) ? 1 : 0);
    }
    return out;
}

} // namespace gamewit

#endif
