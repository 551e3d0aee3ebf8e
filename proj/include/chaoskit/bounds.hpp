#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "chaoskit/errors.hpp"

namespace chaoskit {

// log Gamma(x) for x = twice_x/2 a positive integer or half-integer, by the
// exact recursion down to Gamma(1) = 1 and Gamma(1/2) = sqrt(pi). sqrt(pi) is
// the only transcendental constant in the bound formulas; accumulation error
// stays well below the 1e-12 relative target at desk scale.
inline double log_gamma_half_integer(int twice_x) {
    if (twice_x < 1) throw InputError("log_gamma_half_integer: argument must be positive");
    double acc = 0.0;
    if (twice_x % 2 == 0) {
        const int m = twice_x / 2;  // Gamma(m) = (m-1)!
        for (int j = 2; j < m; ++j) acc += std::log(static_cast<double>(j));
        return acc;
    }
    const int m = (twice_x - 1) / 2;  // Gamma(m + 1/2)
    acc = 0.5 * std::log(std::numbers::pi);
    for (int j = 0; j < m; ++j) acc += std::log(j + 0.5);
    return acc;
}

// A positive bound constant carried in the log domain.
struct BoundValue {
    double value = 0.0;
    double log_value = 0.0;
    std::string formula_id;
};

inline BoundValue make_bound(double log_value, std::string formula_id) {
    return {std::exp(log_value), log_value, std::move(formula_id)};
}

// sqrt(2^K Gamma(K + n/2) / (Gamma(n/2) prod k_i!)), K = sum k_i.
inline BoundValue new_bound(int n, const std::vector<int>& ks) {
    if (n < 1) throw InputError("new_bound: n must be >= 1");
    int K = 0;
    double log_kfact = 0.0;
    for (int k : ks) {
        if (k < 1) throw InputError("new_bound: degrees must be >= 1");
        K += k;
        log_kfact += log_gamma_half_integer(2 * (k + 1));
    }
    const double log_sq = K * std::numbers::ln2 + log_gamma_half_integer(2 * K + n) -
                          log_gamma_half_integer(n) - log_kfact;
    return make_bound(0.5 * log_sq, "new");
}

// Pinasco's constant sqrt(2^{K-2} K^K / prod k_i^{k_i}).
inline BoundValue pinasco_bound(const std::vector<int>& ks) {
    int K = 0;
    double log_kk = 0.0;
    for (int k : ks) {
        if (k < 1) throw InputError("pinasco_bound: degrees must be >= 1");
        K += k;
        log_kk += k * std::log(static_cast<double>(k));
    }
    const double log_sq = (K - 2) * std::numbers::ln2 + K * std::log(static_cast<double>(K)) - log_kk;
    return make_bound(0.5 * log_sq, "pinasco");
}

enum class BoundComparison { new_better, pinasco_better, equal_within_tol };

inline const char* bound_comparison_name(BoundComparison c) {
    switch (c) {
        case BoundComparison::new_better: return "new";
        case BoundComparison::pinasco_better: return "pinasco";
        case BoundComparison::equal_within_tol: return "tie";
    }
    return "?";
}

// Smaller constant = stronger lower bound on S, so "better" means smaller.
inline BoundComparison compare_bounds(int n, const std::vector<int>& ks, double rel_tol = 1e-9) {
    const double ln = new_bound(n, ks).log_value;
    const double lp = pinasco_bound(ks).log_value;
    if (std::abs(ln - lp) <= rel_tol * std::max(std::abs(ln), std::abs(lp)) ||
        std::abs(ln - lp) <= rel_tol)
        return BoundComparison::equal_within_tol;
    return ln < lp ? BoundComparison::new_better : BoundComparison::pinasco_better;
}

// Frenkel's optimizer lower bound (1.91 d)^{-d/2}; the 1.91 is inherited as
// an opaque constant.
inline BoundValue frenkel_lower(int d) {
    if (d < 2) throw InputError("frenkel_lower: d must be >= 2");
    return make_bound(-0.5 * d * std::log(1.91 * d), "frenkel_lower");
}

// Bracket on the d-th real linear polarization constant:
// d^{d/2} <= c_d <= sqrt(d (d+2) ... (3d-2)).
inline std::pair<BoundValue, BoundValue> cd_bracket(int d) {
    if (d < 2) throw InputError("cd_bracket: d must be >= 2");
    const double lower = 0.5 * d * std::log(static_cast<double>(d));
    double upper = 0.0;
    for (int j = 0; j < d; ++j) upper += std::log(static_cast<double>(d + 2 * j));
    return {make_bound(lower, "cd_lower"), make_bound(0.5 * upper, "cd_upper")};
}

}  // namespace chaoskit
