#pragma once

#include <map>
#include <vector>

#include "chaoskit/errors.hpp"
#include "chaoskit/rational.hpp"

namespace chaoskit {

inline BigInt factorial(int n) {
    BigInt acc{1};
    for (int j = 2; j <= n; ++j) acc *= j;
    return acc;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return BigInt{0};
    if (k > n - k) k = n - k;
    BigInt acc{1};
    for (int j = 1; j <= k; ++j) {
        acc *= (n - k + j);
        acc /= j;
    }
    return acc;
}

// (-1)!! = 1 by convention; defined for odd m only.
inline BigInt double_factorial(long long m) {
    if (m < -1 || (m % 2) == 0) throw InputError("double_factorial: argument must be odd and >= -1");
    BigInt acc{1};
    for (long long j = m; j >= 3; j -= 2) acc *= j;
    return acc;
}

// Probabilists' Hermite polynomial in the monomial basis: coeffs[j] is the
// coefficient of x^j. Built from H_0 = 1, H_{k+1} = x H_k - H_k'.
struct HermitePoly {
    int degree = 0;
    std::vector<Rational> coeffs;

    Rational eval(const Rational& x) const {
        Rational acc{0};
        for (int j = degree; j >= 0; --j) acc = acc * x + coeffs[static_cast<size_t>(j)];
        return acc;
    }
};

inline HermitePoly hermite_coeffs(int k) {
    if (k < 0) throw InputError("hermite_coeffs: negative degree");
    std::vector<Rational> cur{Rational(1)};
    for (int n = 0; n < k; ++n) {
        std::vector<Rational> next(cur.size() + 1, Rational(0));
        for (size_t j = 0; j < cur.size(); ++j) {
            next[j + 1] += cur[j];                                        // x * H_n
            if (j >= 1) next[j - 1] -= Rational(static_cast<int>(j)) * cur[j];  // - H_n'
        }
        cur = std::move(next);
    }
    return HermitePoly{k, std::move(cur)};
}

// Three-term recursion H_{k+1}(x) = x H_k(x) - k H_{k-1}(x).
inline Rational hermite_eval(int k, const Rational& x) {
    if (k < 0) throw InputError("hermite_eval: negative degree");
    Rational prev{1};
    if (k == 0) return prev;
    Rational cur = x;
    for (int n = 1; n < k; ++n) {
        Rational next = x * cur - Rational(n) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline double hermite_eval(int k, double x) {
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = x;
    for (int n = 1; n < k; ++n) {
        const double next = x * cur - static_cast<double>(n) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// Linearization H_a H_b = sum_s C(a,s) C(b,s) s! H_{a+b-2s}; returns the
// nonzero coefficients keyed by degree.
inline std::map<int, Rational> linearize(int a, int b) {
    if (a < 0 || b < 0) throw InputError("linearize: negative degree");
    std::map<int, Rational> out;
    const int smax = a < b ? a : b;
    for (int s = 0; s <= smax; ++s) {
        BigInt c = binomial(a, s) * binomial(b, s) * factorial(s);
        out.emplace(a + b - 2 * s, Rational(c));
    }
    return out;
}

// E[R^{2q}] for R^2 ~ chi^2(n): the Gamma ratio 2^q Gamma(n/2+q)/Gamma(n/2)
// telescopes to prod_{j=0}^{q-1} (n + 2j), which stays exact.
inline Rational chi2_moment(int n, int q) {
    if (n < 1) throw InputError("chi2_moment: n must be >= 1");
    if (q < 0) throw InputError("chi2_moment: q must be >= 0");
    BigInt acc{1};
    for (int j = 0; j < q; ++j) acc *= (n + 2 * j);
    return Rational(acc);
}

}  // namespace chaoskit
