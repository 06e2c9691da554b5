// Boolean-function toolbox: truth tables, probabilistic functions,
// delta-random functions, bias / expected bias / noise stability (exact
// rationals, with a seeded Monte Carlo mode), recursive majority, tribes,
// restrictions, and the counting-lemma restriction finder.

#ifndef GAMEWIT_BOOLFUN_HPP
#define GAMEWIT_BOOLFUN_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gamewit/util.hpp"

namespace gamewit {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ── truth tables ────────────────────────────────────────────────────────────

struct TruthTable {
    int n = 0;
    std::vector<std::uint8_t> bits;  // 2^n entries, input index is little-endian

    static TruthTable constant(int n, bool v) {
        TruthTable t;
        t.n = n;
        t.bits.assign(std::size_t(1) << n, v ? 1 : 0);
        return t;
    }
    bool eval(std::size_t x) const { return bits[x] != 0; }
    std::size_t size() const { return bits.size(); }
};

inline TruthTable parity_table(int n) {
    TruthTable t = TruthTable::constant(n, false);
    for (std::size_t x = 0; x < t.size(); ++x) t.bits[x] = __builtin_parityll(x);
    return t;
}

inline TruthTable majority_table(int n) {  // ties (even n) resolve to 0
    TruthTable t = TruthTable::constant(n, false);
    for (std::size_t x = 0; x < t.size(); ++x)
        t.bits[x] = 2 * __builtin_popcountll(x) > n ? 1 : 0;
    return t;
}

// hex string, most significant input first
inline std::string table_to_hex(const TruthTable& t) {
    std::string out;
    int nibble = 0, filled = 0;
    for (std::size_t x = t.size(); x-- > 0;) {
        nibble = (nibble << 1) | (t.bits[x] ? 1 : 0);
        if (++filled == 4) {
            out.push_back("0123456789abcdef"[nibble]);
            nibble = filled = 0;
        }
    }
    if (filled) out.push_back("0123456789abcdef"[nibble]);
    if (out.empty()) out = "0";
    return out;
}

inline TruthTable table_from_hex(int n, const std::string& hex) {
    TruthTable t = TruthTable::constant(n, false);
    std::size_t bit = 0;
    for (std::size_t i = hex.size(); i-- > 0 && bit < t.size();) {
        char c = hex[i];
        int v = c >= '0' && c <= '9' ? c - '0'
                : c >= 'a' && c <= 'f' ? c - 'a' + 10
                : c >= 'A' && c <= 'F' ? c - 'A' + 10
                                       : -1;
        if (v < 0) throw InputError("bad hex digit in truth table");
        for (int b = 0; b < 4 && bit < t.size(); ++b, ++bit) t.bits[bit] = (v >> b) & 1;
    }
    return t;
}

// ── probabilistic functions ─────────────────────────────────────────────────

struct ProbFunction {
    int n = 0;
    std::vector<Rat> p1;  // Pr[output = 1] per input

    static ProbFunction deterministic(const TruthTable& t) {
        ProbFunction f;
        f.n = t.n;
        for (auto b : t.bits) f.p1.push_back(b ? 1 : 0);
        return f;
    }

    // Coin flip on the hardcore set, `base` elsewhere. Must come out balanced.
    static ProbFunction delta_random(const TruthTable& base, const std::vector<std::size_t>& hardcore) {
        ProbFunction f = deterministic(base);
        for (std::size_t x : hardcore) f.p1.at(x) = Rat(1, 2);
        Rat total = 0;
        for (const Rat& p : f.p1) total += p;
        if (total * 2 != Rat(static_cast<long long>(f.p1.size())))
            throw InputError("delta_random: function is not balanced");
        return f;
    }

    Rat delta() const {  // hardcore density / 2
        long long h = 0;
        for (const Rat& p : p1)
            if (p != 0 && p != 1) ++h;
        return Rat(h, 2 * static_cast<long long>(p1.size()));
    }
};

inline Rat bias(const ProbFunction& f) {
    Rat p = 0;
    for (const Rat& q : f.p1) p += q;
    p /= static_cast<long long>(f.p1.size());
    Rat b = 1 - 2 * p;
    return b < 0 ? Rat(-b) : b;
}

inline Rat bias(const TruthTable& t) { return bias(ProbFunction::deterministic(t)); }

inline Rat expbias(const ProbFunction& f) {
    Rat acc = 0;
    for (const Rat& q : f.p1) {
        Rat b = 1 - 2 * q;
        acc += b < 0 ? Rat(-b) : b;
    }
    return acc / static_cast<long long>(f.p1.size());
}

// ── noise stability ─────────────────────────────────────────────────────────
// Exact mode via the Walsh-Hadamard transform of the +-1 table:
//   NoiseStab_delta(C) = sum_S (1-2 delta)^|S| fhat(S)^2.

inline Rat noise_stability_exact(const TruthTable& c, const Rat& delta) {
    if (c.n > 20) throw CapExceeded("exact noise stability capped at 20 inputs");
    std::size_t N = c.size();
    std::vector<long long> w(N);
    for (std::size_t x = 0; x < N; ++x) w[x] = c.bits[x] ? -1 : 1;
    for (std::size_t len = 1; len < N; len <<= 1)
        for (std::size_t i = 0; i < N; i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                long long a = w[j], b = w[j + len];
                w[j] = a + b;
                w[j + len] = a - b;
            }
    Rat rho = 1 - 2 * delta;
    std::vector<Rat> rho_pow(c.n + 1);
    rho_pow[0] = 1;
    for (int i = 1; i <= c.n; ++i) rho_pow[i] = rho_pow[i - 1] * rho;
    std::vector<BigInt> by_weight(c.n + 1, BigInt(0));
    for (std::size_t s = 0; s < N; ++s)
        by_weight[__builtin_popcountll(s)] += BigInt(w[s]) * w[s];
    Rat stab = 0;
    for (int i = 0; i <= c.n; ++i) stab += rho_pow[i] * Rat(by_weight[i]);
    Rat norm = Rat(BigInt(1) << (2 * c.n));
    return stab / norm;
}

struct McEstimate {
    double value = 0;
    double std_error = 0;
    long long samples = 0;
};

inline McEstimate noise_stability_mc(const TruthTable& c, const Rat& delta, long long samples,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double dp = static_cast<double>(boost::multiprecision::numerator(delta)) /
                static_cast<double>(boost::multiprecision::denominator(delta));
    std::uniform_int_distribution<std::size_t> ux(0, c.size() - 1);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    long long agree = 0;
    for (long long s = 0; s < samples; ++s) {
        std::size_t x = ux(rng);
        std::size_t eta = 0;
        for (int b = 0; b < c.n; ++b)
            if (ur(rng) < dp) eta |= std::size_t(1) << b;
        if (c.eval(x) == c.eval(x ^ eta)) ++agree;
    }
    McEstimate e;
    e.samples = samples;
    double p = static_cast<double>(agree) / static_cast<double>(samples);
    e.value = 2 * p - 1;
    e.std_error = 2 * std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(samples));
    return e;
}

// ── recursive majority and tribes ───────────────────────────────────────────

inline int rmaj_eval(int r, const std::vector<std::uint8_t>& bits) {
    std::size_t want = 1;
    for (int i = 0; i < r; ++i) want *= 3;
    if (bits.size() != want) throw InputError("rmaj_eval: expected 3^r input bits");
    std::vector<std::uint8_t> cur = bits;
    for (int level = 0; level < r; ++level) {
        std::vector<std::uint8_t> next;
        next.reserve(cur.size() / 3);
        for (std::size_t i = 0; i < cur.size(); i += 3)
            next.push_back(static_cast<std::uint8_t>(cur[i] + cur[i + 1] + cur[i + 2] >= 2 ? 1 : 0));
        cur = std::move(next);
    }
    return cur[0];
}

// OR of ANDs over blocks of b bits; a short final tribe is padded with 1s.
inline int tribes_eval(int k, int b, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != k) throw InputError("tribes_eval: expected k input bits");
    if (b < 1) throw InputError("tribes_eval: b must be positive");
    for (int start = 0; start < k; start += b) {
        bool all = true;
        for (int i = start; i < start + b; ++i)
            if (i < k && !bits[i]) all = false;
        if (all) return 1;
    }
    return 0;
}

// Smallest b with (1 - 2^-b)^(k/b) >= 1/2, evaluated exactly as
// (2^b - 1)^k >= 2^(b(k-1)).
inline int choose_b(int k) {
    if (k < 1) throw InputError("choose_b: k must be positive");
    for (int b = 1; b <= k; ++b) {
        BigInt lhs = boost::multiprecision::pow(BigInt((BigInt(1) << b) - 1), static_cast<unsigned>(k));
        BigInt rhs = BigInt(1) << static_cast<unsigned>(b * (k - 1));
        if (lhs >= rhs) return b;
    }
    return k;
}

inline TruthTable tribes_table(int k) {
    int b = choose_b(k);
    TruthTable t = TruthTable::constant(k, false);
    for (std::size_t x = 0; x < t.size(); ++x) {
        std::vector<std::uint8_t> bits(k);
        for (int i = 0; i < k; ++i) bits[i] = (x >> i) & 1;
        t.bits[x] = static_cast<std::uint8_t>(tribes_eval(k, b, bits));
    }
    return t;
}

// ── expected bias of C composed with g^(x)k ─────────────────────────────────
// ExpBias[C o g^(x)k] computed exactly: for each tuple of k inputs, the
// hardcore coordinates contribute coins and the rest are fixed, so
// Pr[C(...) = 1] is an average of C over the coin cube.

inline Rat expbias_composed(const TruthTable& c, const ProbFunction& g) {
    int k = c.n, n = g.n;
    if (k * n > 16) throw CapExceeded("expbias_composed capped at k*n <= 16");
    std::size_t total = std::size_t(1) << (k * n);
    std::map<std::pair<std::size_t, std::size_t>, Rat> memo;  // (coin mask, fixed bits) -> Pr[C=1]
    Rat acc = 0;
    for (std::size_t xs = 0; xs < total; ++xs) {
        std::size_t mask = 0, fixed = 0;
        for (int i = 0; i < k; ++i) {
            std::size_t xi = (xs >> (i * n)) & ((std::size_t(1) << n) - 1);
            const Rat& p = g.p1[xi];
            if (p != 0 && p != 1)
                mask |= std::size_t(1) << i;
            else if (p == 1)
                fixed |= std::size_t(1) << i;
        }
        auto key = std::make_pair(mask, fixed);
        auto it = memo.find(key);
        Rat pr;
        if (it != memo.end()) {
            pr = it->second;
        } else {
            int coins = __builtin_popcountll(mask);
            long long ones = 0;
            for (std::size_t cidx = 0; cidx < (std::size_t(1) << coins); ++cidx) {
                std::size_t input = fixed;
                int b = 0;
                for (int i = 0; i < k; ++i)
                    if (mask & (std::size_t(1) << i)) {
                        if ((cidx >> b) & 1) input |= std::size_t(1) << i;
                        ++b;
                    }
                ones += c.eval(input) ? 1 : 0;
            }
            pr = Rat(ones, (long long)(std::size_t(1) << coins));
            memo.emplace(key, pr);
        }
        Rat b = 1 - 2 * pr;
        acc += b < 0 ? Rat(-b) : b;
    }
    return acc / Rat(BigInt(1) << (k * n));
}

struct ExpBiasBound {
    Rat lhs;          // ExpBias[C o g^(x)k]
    Rat noise_stab;   // NoiseStab_delta(C), the square of the right-hand side
    bool holds = false;
};

// Checks ExpBias[C o g^(x)k] <= sqrt(NoiseStab_delta(C)) exactly, comparing
// lhs^2 against the stability (both sides are non-negative for delta <= 1/2).
inline ExpBiasBound expbias_bound_check(const TruthTable& c, const ProbFunction& g) {
    ExpBiasBound out;
    out.lhs = expbias_composed(c, g);
    out.noise_stab = noise_stability_exact(c, g.delta());
    out.holds = out.lhs * out.lhs <= out.noise_stab;
    return out;
}

// ── restrictions and the counting lemma ─────────────────────────────────────
// Sets of m-bit strings; coordinate i is bit i-1 (the first m1 coordinates are
// the low bits). restrict(S, a) keeps the strings whose low m1 bits equal a,
// reindexed by their high m2 bits.

struct BitSubset {
    int m = 0;
    std::vector<std::uint8_t> member;  // 2^m flags

    static BitSubset empty(int m) {
        BitSubset s;
        s.m = m;
        s.member.assign(std::size_t(1) << m, 0);
        return s;
    }
    static BitSubset full(int m) {
        BitSubset s = empty(m);
        for (auto& b : s.member) b = 1;
        return s;
    }
    long long count() const {
        long long c = 0;
        for (auto b : member) c += b;
        return c;
    }
};

inline BitSubset restrict_set(const BitSubset& s, int m1, std::size_t a) {
    if (m1 < 0 || m1 > s.m) throw InputError("restrict_set: bad prefix length");
    BitSubset out = BitSubset::empty(s.m - m1);
    for (std::size_t u = 0; u < out.member.size(); ++u)
        out.member[u] = s.member[(u << m1) | a];
    return out;
}

struct RestrictionWitness {
    std::size_t a = 0;
    long long s_count = 0;  // |S restricted to a|
    long long t_count = 0;
};

// Lexicographically first a with dens(S|_a) >= delta/100 and
// |T|_a| / |S|_a| >= 2/3 - 1/100 (exact integer arithmetic). The hypotheses
// dens(S) = delta > 0 and |T| > (2/3)|S| guarantee existence.
inline RestrictionWitness find_good_restriction(const BitSubset& s, const BitSubset& t, int m1) {
    if (s.m != t.m) throw InputError("find_good_restriction: S and T live on different cubes");
    long long s_total = s.count();
    if (s_total == 0) throw InputError("find_good_restriction: S is empty");
    long long t_total = 0;
    for (std::size_t i = 0; i < t.member.size(); ++i) {
        if (t.member[i] && !s.member[i]) throw InputError("find_good_restriction: T is not a subset of S");
        t_total += t.member[i];
    }
    if (3 * t_total <= 2 * s_total)
        throw InputError("find_good_restriction: hypothesis |T| > (2/3)|S| fails");
    for (std::size_t a = 0; a < (std::size_t(1) << m1); ++a) {
        long long sc = 0, tc = 0;
        std::size_t high = std::size_t(1) << (s.m - m1);
        for (std::size_t u = 0; u < high; ++u) {
            std::size_t w = (u << m1) | a;
            sc += s.member[w];
            tc += t.member[w];
        }
        if (sc == 0) continue;
        // dens(S|_a) >= delta/100  <=>  100 * sc * 2^m1 >= s_total
        bool density_ok = 100 * sc * static_cast<long long>(std::size_t(1) << m1) >= s_total;
        // tc/sc >= 2/3 - 1/100 = 197/300
        bool ratio_ok = 300 * tc >= 197 * sc;
        if (density_ok && ratio_ok) return RestrictionWitness{a, sc, tc};
    }
    throw std::logic_error("counting lemma: no good restriction found despite valid hypotheses");
}

} // namespace gamewit

#endif
