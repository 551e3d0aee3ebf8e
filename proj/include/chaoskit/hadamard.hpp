#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "chaoskit/errors.hpp"
#include "chaoskit/moments.hpp"
#include "chaoskit/reports.hpp"

namespace chaoskit {

using SPDMatrix = Eigen::MatrixXd;

struct AdmissibilityResult {
    bool admissible = false;
    std::string failed_condition;  // empty when admissible
    double min_eigenvalue = 0.0;   // of S
    double max_diagonal = 0.0;     // max S_ii
    double max_zs_eigenvalue = 0.0;  // of Z + S
};

namespace detail {

inline void require_symmetric(const SPDMatrix& s, const char* who) {
    if (s.rows() != s.cols() || s.rows() < 1) throw InputError(std::string(who) + ": matrix must be square");
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        for (Eigen::Index j = i + 1; j < s.cols(); ++j)
            if (s(i, j) != s(j, i)) throw InputError(std::string(who) + ": matrix is not symmetric");
}

}  // namespace detail

// Theorem conditions: S > 0, Z < I (all S_ii < 1), and Z + S < 2I.
inline AdmissibilityResult admissible(const SPDMatrix& s) {
    detail::require_symmetric(s, "admissible");
    AdmissibilityResult out;
    Eigen::SelfAdjointEigenSolver<SPDMatrix> es(s);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    out.max_diagonal = s.diagonal().maxCoeff();
    SPDMatrix zs = s;
    zs.diagonal() += s.diagonal();
    Eigen::SelfAdjointEigenSolver<SPDMatrix> es2(zs);
    out.max_zs_eigenvalue = es2.eigenvalues().maxCoeff();

    if (out.min_eigenvalue <= 0.0) {
        out.failed_condition = "S is not positive definite";
    } else if (out.max_diagonal >= 1.0) {
        out.failed_condition = "Z < I fails: some S_ii >= 1";
    } else if (out.max_zs_eigenvalue >= 2.0) {
        out.failed_condition = "Z + S < 2I fails";
    } else {
        out.admissible = true;
    }
    return out;
}

struct RescaleResult {
    double c = 1.0;
    SPDMatrix scaled;
};

// c = 0.9 min(1/max S_ii, 2/lambda_max(Z+S)) keeps the scaled matrix strictly
// inside both admissibility constraints; det S = det(cS)/c^d.
inline RescaleResult rescale(const SPDMatrix& s) {
    detail::require_symmetric(s, "rescale");
    Eigen::SelfAdjointEigenSolver<SPDMatrix> es(s);
    if (es.eigenvalues().minCoeff() <= 0.0) throw InputError("rescale: matrix is not positive definite");
    SPDMatrix zs = s;
    zs.diagonal() += s.diagonal();
    Eigen::SelfAdjointEigenSolver<SPDMatrix> es2(zs);
    const double c = 0.9 * std::min(1.0 / s.diagonal().maxCoeff(), 2.0 / es2.eigenvalues().maxCoeff());
    return {c, SPDMatrix(c * s)};
}

struct HadamardDecomposition {
    Eigen::VectorXd z;      // diagonal of S
    SPDMatrix sigma;        // unit-diagonal correlation of the Gaussian vector
    Eigen::VectorXd dvec;   // (1 - S_ii)/(2 - S_ii), all in (0, 1/2)
};

// Sigma = I - (1/2) (I-Z)^{-1/2} (S - Z) (I-Z)^{-1/2}; Z diagonal makes the
// conjugation entrywise.
inline HadamardDecomposition decompose(const SPDMatrix& s) {
    auto adm = admissible(s);
    if (!adm.admissible) throw InputError("decompose: inadmissible matrix: " + adm.failed_condition);
    const Eigen::Index d = s.rows();
    HadamardDecomposition out;
    out.z = s.diagonal();
    Eigen::VectorXd inv_sqrt(d);
    for (Eigen::Index i = 0; i < d; ++i) inv_sqrt(i) = 1.0 / std::sqrt(1.0 - out.z(i));
    out.sigma = SPDMatrix::Identity(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            if (i != j) out.sigma(i, j) = -0.5 * inv_sqrt(i) * s(i, j) * inv_sqrt(j);
    out.dvec.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) out.dvec(i) = (1.0 - out.z(i)) / (2.0 - out.z(i));

    for (Eigen::Index i = 0; i < d; ++i)
        if (out.sigma(i, i) != 1.0) throw std::logic_error("decompose: Sigma diagonal is not 1");
    Eigen::SelfAdjointEigenSolver<SPDMatrix> es(out.sigma);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::logic_error("decompose: Sigma is not positive definite");
    return out;
}

struct HadamardSeries {
    double sum = 0.0;
    std::vector<double> order_sums;    // contribution of each total order 0..N
    std::vector<double> partial_sums;  // cumulative, nondecreasing
};

// Truncation of det S = (sum_k E[prod H_{k_i}(X_i)^2]/prod k_i! *
// prod sqrt(S_ii) (1-S_ii)^{k_i})^{-2} over the box 0 <= k_i <= N. Every term
// is nonnegative, so enlarging N only adds mass and the partial sums increase
// toward (det S)^{-1/2}; subtotals are recorded by total order sum k_i. The
// squared Hermite moments come from the same matching engine as the exact
// path, run on double correlations with one memo shared across all
// multi-orders.
inline HadamardSeries hadamard_series(const SPDMatrix& s, int order) {
    if (order < 0) throw InputError("hadamard_series: negative truncation order");
    auto dec = decompose(s);
    const int d = static_cast<int>(s.rows());
    // The shared matching memo grows roughly like (order^2/2)^d entries.
    const int max_order = d <= 2 ? 60 : (d == 3 ? 14 : 6);
    if (order > max_order)
        throw ResourceError("hadamard_series: truncation order capped at " + std::to_string(max_order) +
                            " for dimension " + std::to_string(d));

    // 2d nodes, two per variable.
    std::vector<int> vars;
    for (int i = 0; i < d; ++i) {
        vars.push_back(i);
        vars.push_back(i);
    }
    std::vector<std::vector<double>> w(vars.size(), std::vector<double>(vars.size()));
    for (size_t a = 0; a < vars.size(); ++a)
        for (size_t b = 0; b < vars.size(); ++b) w[a][b] = dec.sigma(vars[a], vars[b]);
    MatchingEvaluator<double> moments(std::move(w), vars);

    std::vector<double> weight_base(static_cast<size_t>(d));
    std::vector<double> decay(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        weight_base[static_cast<size_t>(i)] = std::sqrt(dec.z(i));
        decay[static_cast<size_t>(i)] = 1.0 - dec.z(i);
    }

    HadamardSeries out;
    out.order_sums.assign(static_cast<size_t>(d) * order + 1, 0.0);
    std::vector<int> k(static_cast<size_t>(d), 0);
    std::vector<int> degs(vars.size(), 0);
    auto walk = [&](auto&& self, int pos) -> void {
        if (pos == d) {
            double term = 1.0;
            int total = 0;
            for (int i = 0; i < d; ++i) {
                const int ki = k[static_cast<size_t>(i)];
                degs[static_cast<size_t>(2 * i)] = ki;
                degs[static_cast<size_t>(2 * i + 1)] = ki;
                term *= weight_base[static_cast<size_t>(i)] *
                        std::pow(decay[static_cast<size_t>(i)], ki) /
                        to_double(Rational(factorial(ki)));
                total += ki;
            }
            term *= moments.eval(degs);
            out.order_sums[static_cast<size_t>(total)] += term;
            return;
        }
        for (int ki = 0; ki <= order; ++ki) {
            k[static_cast<size_t>(pos)] = ki;
            self(self, pos + 1);
        }
        k[static_cast<size_t>(pos)] = 0;
    };
    walk(walk, 0);

    out.partial_sums.resize(out.order_sums.size());
    double acc = 0.0;
    for (size_t i = 0; i < out.order_sums.size(); ++i) {
        acc += out.order_sums[i];
        out.partial_sums[i] = acc;
    }
    out.sum = acc;
    return out;
}

// Closed form of the full series: det(I - 2 D Sigma)^{-1/2} *
// prod (S_ii (2 - S_ii))^{-1/2} * prod sqrt(S_ii); the function also checks
// the assembled value against the direct (det S)^{-1/2} to 1e-12 relative.
inline double closed_form(const SPDMatrix& s) {
    auto dec = decompose(s);
    const Eigen::Index d = s.rows();
    SPDMatrix m = SPDMatrix::Identity(d, d) - 2.0 * dec.dvec.asDiagonal() * dec.sigma;
    const double det_m = m.determinant();
    double value = 1.0 / std::sqrt(det_m);
    for (Eigen::Index i = 0; i < d; ++i) {
        value /= std::sqrt(dec.z(i) * (2.0 - dec.z(i)));
        value *= std::sqrt(dec.z(i));
    }
    const double direct = 1.0 / std::sqrt(s.determinant());
    if (std::abs(value - direct) > 1e-12 * std::abs(direct))
        throw std::logic_error("closed_form: assembled value disagrees with (det S)^{-1/2}");
    return value;
}

struct Mehler1dCheck {
    double partial = 0.0;
    double closed = 0.0;
    double tail_bound = 0.0;
    bool within_bound = false;
};

// One-dimensional Mehler identity sum_k H_k(x)^2 z^k / k! =
// (1-z^2)^{-1/2} exp(z x^2 / (z+1)); the truncation error is estimated from
// the observed geometric decay of the last terms.
inline Mehler1dCheck mehler_1d_check(double z, double x, int order) {
    if (!(z > 0.0 && z < 1.0)) throw InputError("mehler_1d_check: z must lie in (0, 1)");
    if (order < 4) throw InputError("mehler_1d_check: order too small");
    Mehler1dCheck out;
    out.closed = std::exp(z * x * x / (z + 1.0)) / std::sqrt(1.0 - z * z);

    double term = 1.0;  // k = 0: H_0 = 1
    double prev = 0.0;
    double ratio = z;
    for (int k = 0; k <= order; ++k) {
        const double h = hermite_eval(k, x);
        term = h * h * std::pow(z, k) / to_double(Rational(factorial(k)));
        out.partial += term;
        if (k >= order - 4 && prev > 0.0 && term > 0.0) ratio = std::max(ratio, term / prev);
        prev = term;
    }
    if (ratio < 1.0)
        out.tail_bound = term * ratio / (1.0 - ratio) + 1e-12 * out.closed;
    else
        out.tail_bound = std::numeric_limits<double>::infinity();
    out.within_bound = std::abs(out.closed - out.partial) <= out.tail_bound;
    return out;
}

// Classical Hadamard margin prod S_ii - det S >= 0, equality iff diagonal.
inline VerificationReport classical_margin(const SPDMatrix& s) {
    detail::require_symmetric(s, "classical_margin");
    Eigen::SelfAdjointEigenSolver<SPDMatrix> es(s);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw InputError("classical_margin: matrix is not positive definite");
    const double lhs = s.diagonal().prod();
    const double rhs = s.determinant();
    std::string digest = "hadamard_classical|S=";
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        for (Eigen::Index j = 0; j < s.cols(); ++j) {
            if (i || j) digest += ',';
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", s(i, j));
            digest += buf;
        }
    return make_float_report("hadamard_classical", lhs, rhs, std::move(digest));
}

// Plain text: d*d whitespace-separated entries (row-major); dimension is
// inferred from the count.
inline SPDMatrix parse_matrix_text(const std::string& text) {
    std::istringstream is(text);
    std::vector<double> entries;
    double v = 0.0;
    while (is >> v) entries.push_back(v);
    if (entries.empty()) throw InputError("parse_matrix_text: no entries");
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
    if (static_cast<size_t>(d) * static_cast<size_t>(d) != entries.size())
        throw InputError("parse_matrix_text: entry count is not a perfect square");
    SPDMatrix s(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) s(i, j) = entries[static_cast<size_t>(i * d + j)];
    return s;
}

}  // namespace chaoskit
