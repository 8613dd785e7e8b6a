#pragma once

// Exact evaluation of the bound formulas around the k-class construction.
// Everything is an exact rational except the (r/2)(14/15)^{r/4} decay term,
// which has a fractional exponent and is evaluated in 50-digit decimal
// floating point.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "gpd/constructions.hpp"
#include "gpd/core.hpp"

namespace gpd {

using Rational = boost::multiprecision::cpp_rational;
using HighPrecision = boost::multiprecision::cpp_dec_float_50;

/// Significant decimal digits carried by HighPrecision.
inline constexpr int high_precision_digits = 50;

/// Density of the best known block decomposition: g(n) <= (14/15 + o(1)) n^2.
inline Rational block_density() { return Rational(14, 15); }

inline Rational rational_pow(const Rational& base, std::size_t e) {
    Rational out = 1;
    Rational b = base;
    while (e) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

inline BigInt factorial(std::size_t m) {
    BigInt f = 1;
    for (std::size_t i = 2; i <= m; ++i) f *= i;
    return f;
}

/// Partitions of x into at most m parts (equivalently, parts of size <= m).
inline BigInt partitions_at_most(std::size_t x, std::size_t m) {
    std::vector<BigInt> ways(x + 1, 0);
    ways[0] = 1;
    for (std::size_t part = 1; part <= std::min(m, x); ++part)
        for (std::size_t s = part; s <= x; ++s) ways[s] += ways[s - part];
    return ways[x];
}

/// C': partitions of r into at most d-1 parts with exactly one odd part.
/// Counted by choosing the odd part o and splitting r - o into at most d-2
/// even parts, i.e. (r-o)/2 into at most d-2 parts.
inline BigInt count_c_prime(std::size_t r, std::size_t d) {
    if (d < 1) throw std::invalid_argument("count_c_prime needs d >= 1");
    if (r != 2 * d + 1) throw std::invalid_argument("count_c_prime needs r = 2d+1");
    if (d < 2) return 0;
    BigInt total = 0;
    for (std::size_t odd = 1; odd <= r; odd += 2) {
        const std::size_t rest = r - odd;
        if (rest % 2) continue;
        total += partitions_at_most(rest / 2, d - 2);
    }
    return total;
}

/// (14/15)^{floor(d/2)} + d (14/15)^{floor((d-1)/2)}.
inline Rational theorem1_main_coefficient(std::size_t d) {
    if (d < 1) throw std::invalid_argument("coefficient needs d >= 1");
    const Rational q = block_density();
    return rational_pow(q, d / 2) + Rational(d) * rational_pow(q, (d - 1) / 2);
}

/// Lower-bound coefficient 2 / binomial(2 floor(r/2), floor(r/2)). This is
/// an asymptotic statement about f_r(n) / binomial(n, floor(r/2)); it gives
/// no guarantee for any particular n.
inline Rational alon_lower_coefficient(std::size_t r) {
    if (r < 2) throw std::invalid_argument("alon_lower_coefficient needs r >= 2");
    const std::size_t h = r / 2;
    return Rational(BigInt(2), binomial(2 * h, h));
}

struct DecayBound {
    std::size_t r = 0;
    HighPrecision value;              // (r/2)(14/15)^{r/4}
    std::optional<Rational> exact;    // present when 4 divides r
    int precision_digits = high_precision_digits;
    // Even r is bounded through the odd case via f_r(n) <= f_{r+1}(n+1).
    std::size_t odd_source_r = 0;
    Rational odd_source_coefficient;  // theorem1_main_coefficient for the odd source
};

/// Main term of c_r <= (r/2)(14/15)^{r/4} + o(1); the o(1) is not quantified.
inline DecayBound corollary2_bound(std::size_t r) {
    if (r < 2) throw std::invalid_argument("corollary2_bound needs r >= 2");
    DecayBound b;
    b.r = r;
    const HighPrecision q = HighPrecision(14) / HighPrecision(15);
    b.value = HighPrecision(r) / 2 * pow(q, HighPrecision(r) / 4);
    if (r % 4 == 0) {
        b.exact = Rational(r, 2) * rational_pow(block_density(), r / 4);
        b.value = HighPrecision(numerator(*b.exact)) / HighPrecision(denominator(*b.exact));
    }
    b.odd_source_r = r % 2 ? r : r + 1;
    b.odd_source_coefficient = theorem1_main_coefficient(b.odd_source_r / 2);
    return b;
}

struct BoundReport {
    std::size_t d = 0;
    std::size_t k = 0;
    std::size_t r = 0;  // 2d+1
    Rational theorem1_coefficient;
    bool coefficient_below_one = false;
    BigInt c_prime;
    Rational epsilon_k;  // d! C' / k, as instantiated in the proof chain
    Rational alon_lower_coefficient;
    DecayBound corollary2;
};

inline BoundReport theorem1_coefficient(std::size_t d, std::size_t k) {
    if (d < 1 || k < 1) throw std::invalid_argument("theorem1_coefficient needs d >= 1 and k >= 1");
    BoundReport rep;
    rep.d = d;
    rep.k = k;
    rep.r = 2 * d + 1;
    rep.theorem1_coefficient = theorem1_main_coefficient(d);
    rep.coefficient_below_one = rep.theorem1_coefficient < 1;
    rep.c_prime = count_c_prime(rep.r, d);
    rep.epsilon_k = Rational(factorial(d) * rep.c_prime, BigInt(k));
    rep.alon_lower_coefficient = alon_lower_coefficient(rep.r);
    rep.corollary2 = corollary2_bound(rep.r);
    return rep;
}

/// Least d whose coefficient is below 1, by exact rational comparison.
inline std::size_t threshold_d(std::size_t search_limit = 100'000) {
    for (std::size_t d = 1; d <= search_limit; ++d)
        if (theorem1_main_coefficient(d) < 1) return d;
    throw std::runtime_error("no threshold found within search limit");
}

inline std::size_t threshold_r() { return 2 * threshold_d() + 1; }

/// Piece counts for construct_theorem1 with baseline sub-decompositions,
/// computed by counting rather than constructing, next to the formula
/// bookkeeping bound.
struct PredictedCount {
    FamilyTally exact;
    BigInt exact_total;
    // Literal case-split bound, with the C n^{d-1} term replaced by the exact
    // generic-family tally (C itself is never given a value).
    BigInt formula_bound;
};

using BlockCountFn = std::function<BigInt(std::size_t n)>;

inline BigInt trivial_block_count(std::size_t n) { return BigInt(n - 1) * (n - 1); }

inline PredictedCount predicted_theorem1_count(std::size_t n, std::size_t k, std::size_t d,
                                               const BlockCountFn& block_count = trivial_block_count) {
    if (d < 1 || n < 2 || k < 1) throw std::invalid_argument("predicted_theorem1_count needs d, k >= 1, n >= 2");
    const std::size_t r = 2 * d + 1;
    if (r > k * n) throw std::invalid_argument("predicted_theorem1_count needs r <= k*n");
    const BigInt g = block_count(n);
    const BigInt subsets = binomial(k, d);
    auto gpow = [&](std::size_t e) -> BigInt { return boost::multiprecision::pow(g, static_cast<unsigned>(e)); };
    auto npow = [&](std::size_t e) -> BigInt { return boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(e)); };

    PredictedCount out;
    // d 2-classes paired into blocks, an odd one out covered by n-1 stars,
    // the single vertex in the complement (nonempty only when k > d).
    if (k > d) {
        out.exact.twos_and_single = subsets * gpow(d / 2) * (d % 2 ? baseline_count(n, 2) : BigInt(1));
    }
    // d-1 2-classes plus a 3-class: d * C(k,d) placements when n >= 3.
    if (n >= 3) {
        const std::size_t twos = d - 1;
        out.exact.twos_and_triple = BigInt(d) * subsets * baseline_count(n, 3) * gpow(twos / 2) *
                                    (twos % 2 ? baseline_count(n, 2) : BigInt(1));
    }
    // Everything else: product of baseline counts over each size vector.
    std::vector<std::size_t> sizes;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t cls, std::size_t remaining) {
        if (cls == k) {
            if (remaining) return;
            std::size_t l = 0, twos = 0, ones = 0, threes = 0;
            BigInt prod = 1;
            for (auto s : sizes) {
                if (!s) continue;
                ++l;
                twos += s == 2;
                ones += s == 1;
                threes += s == 3;
                prod *= baseline_count(n, s);
            }
            const bool single = l == d + 1 && twos == d && ones == 1;
            const bool triple = l == d && twos + 1 == d && threes == 1;
            if (!single && !triple) out.exact.generic += prod;
            return;
        }
        for (std::size_t s = 0; s <= std::min(n, remaining); ++s) {
            sizes.push_back(s);
            rec(cls + 1, remaining - s);
            sizes.pop_back();
        }
    };
    rec(0, r);
    out.exact_total = out.exact.total();

    const BigInt c_prime = count_c_prime(r, d);
    const BigInt shared = c_prime * boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(d - 1)) * npow(d) +
                          out.exact.generic;
    if (d % 2 == 0) {
        out.formula_bound = subsets * gpow(d / 2) + BigInt(d) * subsets * npow(2) * gpow((d - 2) / 2) + shared;
    } else {
        out.formula_bound = subsets * n * gpow((d - 1) / 2) + BigInt(d) * subsets * n * gpow((d - 1) / 2) + shared;
    }
    return out;
}

}  // namespace gpd
