#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "chaoskit/chaos.hpp"
#include "chaoskit/errors.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/rational.hpp"
#include "chaoskit/rng.hpp"

namespace chaoskit {

// Homogeneous multilinear (squarefree) form of degree k on R^n: coefficients
// live on strictly increasing 1-based index tuples. Such forms are
// automatically Ornstein-Uhlenbeck eigenfunctions of degree k, and distinct
// squarefree monomials are gamma-orthonormal, so the gamma norm is just the
// coefficient l2 norm.
struct MultilinearForm {
    int n = 0;
    int k = 0;
    std::map<std::vector<int>, Rational> coeffs;

    void add_term(std::vector<int> tuple, const Rational& c) {
        if (static_cast<int>(tuple.size()) != k)
            throw InputError("MultilinearForm: tuple length does not match the degree");
        for (size_t i = 0; i < tuple.size(); ++i) {
            if (tuple[i] < 1 || tuple[i] > n) throw InputError("MultilinearForm: index out of range");
            if (i > 0 && tuple[i] <= tuple[i - 1])
                throw InputError("MultilinearForm: indices must be strictly increasing");
        }
        if (c == 0) return;
        auto [it, inserted] = coeffs.emplace(std::move(tuple), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }

    bool is_zero() const { return coeffs.empty(); }

    ChaosElement to_chaos() const {
        ChaosElement f = ChaosElement::zero(n);
        for (const auto& [tuple, c] : coeffs) {
            MultiIndex alpha;
            for (int idx : tuple) alpha.parts.emplace_back(idx - 1, 1);
            f.add_term(alpha, c);
        }
        return f;
    }

    std::string digest_string() const {
        std::ostringstream os;
        os << n << ' ' << k;
        for (const auto& [tuple, c] : coeffs) {
            os << "; ";
            for (size_t i = 0; i < tuple.size(); ++i) {
                if (i) os << ',';
                os << tuple[i];
            }
            os << '=' << to_fraction_string(c);
        }
        return os.str();
    }
};

// gamma-norm squared: sum of squared coefficients.
inline Rational gamma_norm2(const MultilinearForm& f) {
    Rational acc{0};
    for (const auto& [tuple, c] : f.coeffs) acc += c * c;
    return acc;
}

// E[F^2(theta)] on the uniform sphere: by homogeneity g = R theta splits
// E[F^2(g)] = E[R^{2k}] E[F^2(theta)].
inline Rational sphere_mean_square(const MultilinearForm& f) {
    return gamma_norm2(f) / chi2_moment(f.n, f.k);
}

inline double eval(const MultilinearForm& f, std::span<const double> x) {
    double acc = 0.0;
    for (const auto& [tuple, c] : f.coeffs) {
        double term = to_double(c);
        for (int idx : tuple) term *= x[static_cast<size_t>(idx - 1)];
        acc += term;
    }
    return acc;
}

// Value and gradient in one pass.
inline double eval_with_gradient(const MultilinearForm& f, std::span<const double> x,
                                 std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double acc = 0.0;
    for (const auto& [tuple, c] : f.coeffs) {
        const double cd = to_double(c);
        double term = cd;
        for (int idx : tuple) term *= x[static_cast<size_t>(idx - 1)];
        acc += term;
        for (size_t drop = 0; drop < tuple.size(); ++drop) {
            double partial = cd;
            for (size_t i = 0; i < tuple.size(); ++i) {
                if (i == drop) continue;
                partial *= x[static_cast<size_t>(tuple[i] - 1)];
            }
            grad[static_cast<size_t>(tuple[drop] - 1)] += partial;
        }
    }
    return acc;
}

// Text format, one form per line: "n k; i1,...,ik = value; ...".
// '#' starts a comment; blank lines are skipped.
inline MultilinearForm parse_multilinear_form(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (start <= line.size()) {
        size_t pos = line.find(';', start);
        if (pos == std::string::npos) pos = line.size();
        std::string piece = line.substr(start, pos - start);
        const auto a = piece.find_first_not_of(" \t");
        const auto b = piece.find_last_not_of(" \t");
        fields.push_back(a == std::string::npos ? std::string() : piece.substr(a, b - a + 1));
        start = pos + 1;
    }
    if (fields.empty() || fields[0].empty()) throw InputError("parse_multilinear_form: missing header");
    std::istringstream head(fields[0]);
    int n = 0, k = 0;
    if (!(head >> n >> k) || n < 1 || k < 1)
        throw InputError("parse_multilinear_form: malformed 'n k' header: " + fields[0]);
    MultilinearForm f{n, k, {}};
    for (size_t t = 1; t < fields.size(); ++t) {
        if (fields[t].empty()) continue;
        const auto eq = fields[t].find('=');
        if (eq == std::string::npos)
            throw InputError("parse_multilinear_form: term without '=': " + fields[t]);
        std::vector<int> tuple;
        std::stringstream idx_ss(fields[t].substr(0, eq));
        std::string tok;
        while (std::getline(idx_ss, tok, ',')) {
            const auto a = tok.find_first_not_of(" \t");
            const auto b = tok.find_last_not_of(" \t");
            if (a == std::string::npos) throw InputError("parse_multilinear_form: empty index");
            try {
                tuple.push_back(std::stoi(tok.substr(a, b - a + 1)));
            } catch (const std::exception&) {
                throw InputError("parse_multilinear_form: malformed index: " + tok);
            }
        }
        std::string value = fields[t].substr(eq + 1);
        const auto a = value.find_first_not_of(" \t");
        const auto b = value.find_last_not_of(" \t");
        if (a == std::string::npos) throw InputError("parse_multilinear_form: empty coefficient");
        f.add_term(std::move(tuple), parse_rational(value.substr(a, b - a + 1)));
    }
    return f;
}

inline std::string format_multilinear_form(const MultilinearForm& f) { return f.digest_string(); }

namespace fixtures {

// Random form with coefficients on a small rational grid; never identically
// zero.
inline MultilinearForm random_multilinear_form(int n, int k, SplitMix64& g, int max_terms = 6) {
    if (k > n) throw InputError("random_multilinear_form: degree exceeds dimension");
    MultilinearForm f{n, k, {}};
    const int terms = static_cast<int>(g.uniform_int(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        // Random strictly increasing k-subset of [1..n].
        std::vector<int> pool(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i + 1;
        for (int i = 0; i < k; ++i) {
            const auto j = static_cast<size_t>(g.uniform_int(i, n - 1));
            std::swap(pool[static_cast<size_t>(i)], pool[j]);
        }
        std::vector<int> tuple(pool.begin(), pool.begin() + k);
        std::sort(tuple.begin(), tuple.end());
        Rational c(g.uniform_int(-3, 3), g.uniform_int(1, 3));
        if (c == 0) c = Rational(1, 2);
        f.add_term(std::move(tuple), c);
    }
    if (f.is_zero()) {
        std::vector<int> tuple(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) tuple[static_cast<size_t>(i)] = i + 1;
        f.add_term(std::move(tuple), Rational(1));
    }
    return f;
}

// Linear form <v, x> from an exact unit vector.
inline MultilinearForm linear_form(const std::vector<Rational>& v) {
    MultilinearForm f{static_cast<int>(v.size()), 1, {}};
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) f.add_term({static_cast<int>(i) + 1}, v[i]);
    return f;
}

}  // namespace fixtures

}  // namespace chaoskit
