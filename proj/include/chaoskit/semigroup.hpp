#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "chaoskit/chaos.hpp"
#include "chaoskit/errors.hpp"
#include "chaoskit/rational.hpp"
#include "chaoskit/rng.hpp"

namespace chaoskit {

// The semigroup parameter s = e^{-t}, kept rational so the whole P_t calculus
// stays exact; t itself never appears on the exact path.
struct ContractionFactor {
    Rational s;

    explicit ContractionFactor(Rational value) : s(std::move(value)) {
        if (s <= 0 || s > 1) throw InputError("ContractionFactor: s must satisfy 0 < s <= 1");
    }
};

// P_t scales the degree-k component by s^k.
inline ChaosElement semigroup_apply(const ChaosElement& f, const ContractionFactor& s) {
    if (s.s == 1) return f;
    ChaosElement out = ChaosElement::zero(f.dimension);
    for (const auto& [alpha, c] : f.coeffs)
        out.coeffs.emplace(alpha, Rational(c * rational_pow(s.s, static_cast<unsigned>(alpha.total_degree()))));
    return out;
}

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

// Monte Carlo side of Mehler's formula: average F(s x + sqrt(1-s^2) y) over
// y ~ gamma_n. Sample i draws from substream(seed, i), so the estimate is
// reproducible and independent of any evaluation order.
inline McEstimate mehler_mc(const ChaosElement& f, const ContractionFactor& s, std::span<const double> x,
                            long samples, std::uint64_t seed) {
    if (samples < 1) throw InputError("mehler_mc: need at least one sample");
    if (static_cast<int>(x.size()) != f.dimension) throw InputError("mehler_mc: point dimension mismatch");
    const double sd = to_double(s.s);
    const double noise = s.s == 1 ? 0.0 : std::sqrt(1.0 - sd * sd);
    double mean = 0.0;
    double m2 = 0.0;
    std::vector<double> point(x.size());
    for (long i = 0; i < samples; ++i) {
        SplitMix64 g = substream(seed, static_cast<std::uint64_t>(i));
        for (size_t j = 0; j < point.size(); ++j) point[j] = sd * x[j] + noise * g.normal();
        const double v = eval_double(f, point);
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

// phi(t) = int prod_i P_t(F_i^2) dgamma, evaluated exactly on a grid of
// contraction factors. Non-increasing in t for pure eigenfunctions.
inline std::vector<Rational> phi_curve(const std::vector<ChaosElement>& fs,
                                       const std::vector<ContractionFactor>& grid, int degree_cap = 28) {
    int total = 0;
    for (const auto& f : fs) {
        const int k = f.degree();
        if (!f.is_pure(k)) throw InputError("phi_curve: factors must be pure eigenfunctions");
        total += 2 * k;
    }
    if (total > degree_cap) throw ResourceError("phi_curve: total squared degree exceeds cap");

    std::vector<ChaosElement> squares;
    squares.reserve(fs.size());
    for (const auto& f : fs) squares.push_back(multiply(f, f));

    std::vector<Rational> out;
    out.reserve(grid.size());
    for (const auto& s : grid) {
        std::vector<ChaosElement> scaled;
        scaled.reserve(squares.size());
        for (const auto& q : squares) scaled.push_back(semigroup_apply(q, s));
        out.push_back(product_expectation(scaled, degree_cap));
    }
    return out;
}

// sum_i int L P_t(F_i^2) prod_{j != i} P_t(F_j^2) dgamma; equals phi'(t) and
// is <= 0 for pure eigenfunctions.
inline Rational negatif_functional(const std::vector<ChaosElement>& fs, const ContractionFactor& s,
                                   int degree_cap = 28) {
    int total = 0;
    for (const auto& f : fs) {
        const int k = f.degree();
        if (!f.is_pure(k)) throw InputError("negatif_functional: factors must be pure eigenfunctions");
        total += 2 * k;
    }
    if (total > degree_cap) throw ResourceError("negatif_functional: total squared degree exceeds cap");

    std::vector<ChaosElement> scaled;
    scaled.reserve(fs.size());
    for (const auto& f : fs) scaled.push_back(semigroup_apply(multiply(f, f), s));

    Rational acc{0};
    for (size_t i = 0; i < scaled.size(); ++i) {
        std::vector<ChaosElement> factors;
        factors.reserve(scaled.size());
        factors.push_back(generator_apply(scaled[i]));
        for (size_t j = 0; j < scaled.size(); ++j)
            if (j != i) factors.push_back(scaled[j]);
        acc += product_expectation(factors, degree_cap);
    }
    return acc;
}

}  // namespace chaoskit
