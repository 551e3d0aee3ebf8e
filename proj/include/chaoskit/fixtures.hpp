#pragma once

#include <utility>
#include <vector>

#include "chaoskit/chaos.hpp"
#include "chaoskit/correlation.hpp"
#include "chaoskit/moments.hpp"
#include "chaoskit/rational.hpp"
#include "chaoskit/rng.hpp"

namespace chaoskit::fixtures {

// Exact rational point on S^{n-1} via the inverse stereographic map
// v = (2q, |q|^2 - 1)/(|q|^2 + 1) for a small random rational q in Q^{n-1}.
// This is the Pythagorean-tuple generator behind every Gram fixture.
inline std::vector<Rational> rational_unit_vector(int n, SplitMix64& g) {
    if (n == 1) return {Rational(g.uniform() < 0.5 ? 1 : -1)};
    std::vector<Rational> q(static_cast<size_t>(n) - 1);
    for (auto& c : q) c = Rational(g.uniform_int(-3, 3), g.uniform_int(1, 3));
    Rational norm2{0};
    for (const auto& c : q) norm2 += c * c;
    const Rational denom = norm2 + 1;
    std::vector<Rational> v(static_cast<size_t>(n));
    for (int j = 0; j + 1 < n; ++j) v[static_cast<size_t>(j)] = Rational(2) * q[static_cast<size_t>(j)] / denom;
    v[static_cast<size_t>(n) - 1] = (norm2 - 1) / denom;
    return v;
}

// Exactly PSD unit-diagonal correlation matrix: the Gram matrix of d random
// rational unit vectors in R^d.
inline CorrelationMatrix random_gram_correlation(int d, SplitMix64& g) {
    std::vector<std::vector<Rational>> vs;
    vs.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) vs.push_back(rational_unit_vector(d, g));
    return CorrelationMatrix::gram(vs);
}

// Correlation matrix with off-diagonal entries drawn from
// {0, +-1/4, +-1/2, +-1}, rejection-sampled until exactly PSD.
inline CorrelationMatrix random_grid_correlation(int d, SplitMix64& g) {
    static const Rational pool[] = {Rational(0),     Rational(1, 4),  Rational(-1, 4), Rational(1, 2),
                                    Rational(-1, 2), Rational(1),     Rational(-1)};
    for (;;) {
        std::vector<Rational> e(static_cast<size_t>(d) * d, Rational(1));
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                const Rational rho = pool[g.uniform_int(0, 6)];
                e[static_cast<size_t>(i) * d + j] = rho;
                e[static_cast<size_t>(j) * d + i] = rho;
            }
        try {
            return CorrelationMatrix::from_entries(d, std::move(e));
        } catch (const InputError&) {
            // not PSD; redraw
        }
    }
}

inline Rational random_coefficient(SplitMix64& g) {
    Rational c(g.uniform_int(-4, 4), g.uniform_int(1, 3));
    if (c == 0) c = Rational(1);
    return c;
}

// Pure degree-k element on n coordinates with a handful of random terms.
inline ChaosElement random_pure_element(int n, int k, int max_terms, SplitMix64& g) {
    ChaosElement f = ChaosElement::zero(n);
    const int terms = static_cast<int>(g.uniform_int(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        // Random composition of k over the n coordinates.
        std::vector<int> alpha(static_cast<size_t>(n), 0);
        int remaining = k;
        for (int j = 0; j + 1 < n && remaining > 0; ++j) {
            const int a = static_cast<int>(g.uniform_int(0, remaining));
            alpha[static_cast<size_t>(j)] = a;
            remaining -= a;
        }
        alpha[static_cast<size_t>(n) - 1] += remaining;
        f.add_term(MultiIndex::from_dense(alpha), random_coefficient(g));
    }
    if (f.is_zero()) f.add_term(MultiIndex::single(0, k), Rational(1));
    return f;
}

// Pure elements on pairwise disjoint coordinate blocks; the constructive
// independent family for equality-case checks.
inline std::vector<ChaosElement> disjoint_pure_family(const std::vector<int>& degrees, int coords_each,
                                                      SplitMix64& g) {
    const int d = static_cast<int>(degrees.size());
    const int n = d * coords_each;
    std::vector<ChaosElement> fs;
    fs.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        ChaosElement block = random_pure_element(coords_each, degrees[static_cast<size_t>(i)], 3, g);
        ChaosElement lifted = ChaosElement::zero(n);
        for (const auto& [alpha, c] : block.coeffs) {
            MultiIndex shifted;
            for (const auto& [coord, deg] : alpha.parts) shifted.parts.emplace_back(coord + i * coords_each, deg);
            lifted.add_term(shifted, c);
        }
        fs.push_back(std::move(lifted));
    }
    return fs;
}

inline ComplexRational random_complex_coefficient(SplitMix64& g) {
    return ComplexRational(Rational(g.uniform_int(-3, 3), g.uniform_int(1, 2)),
                           Rational(g.uniform_int(-3, 3), g.uniform_int(1, 2)));
}

inline ComplexVectorSet random_complex_vectors(int d, SplitMix64& g) {
    ComplexVectorSet out;
    out.vectors.resize(static_cast<size_t>(d));
    for (auto& v : out.vectors) {
        v.resize(static_cast<size_t>(d));
        bool nonzero = false;
        for (auto& c : v) {
            c = random_complex_coefficient(g);
            nonzero = nonzero || !c.is_zero();
        }
        if (!nonzero) v[0] = ComplexRational(Rational(1), Rational(0));
    }
    return out;
}

}  // namespace chaoskit::fixtures
