#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/errors.hpp"
#include "chaoskit/rational.hpp"

namespace chaoskit {

namespace detail {

// Exact PSD test by symmetric rational elimination. A symmetric matrix is PSD
// iff the elimination never meets a negative pivot and every zero-pivot row is
// entirely zero (a nonzero entry next to a zero diagonal gives a negative
// 2x2 principal minor).
inline bool is_psd_exact(int d, std::vector<Rational> a) {
    auto at = [&](int i, int j) -> Rational& { return a[static_cast<size_t>(i) * d + j]; };
    std::vector<bool> done(static_cast<size_t>(d), false);
    for (int step = 0; step < d; ++step) {
        int pivot = -1;
        for (int i = 0; i < d; ++i) {
            if (done[static_cast<size_t>(i)]) continue;
            if (at(i, i) < 0) return false;
            if (at(i, i) > 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) {
            // All remaining diagonal entries are zero; their rows must vanish.
            for (int i = 0; i < d; ++i) {
                if (done[static_cast<size_t>(i)]) continue;
                for (int j = 0; j < d; ++j) {
                    if (!done[static_cast<size_t>(j)] && at(i, j) != 0) return false;
                }
            }
            return true;
        }
        const Rational p = at(pivot, pivot);
        for (int i = 0; i < d; ++i) {
            if (done[static_cast<size_t>(i)] || i == pivot) continue;
            const Rational f = at(i, pivot) / p;
            if (f == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (done[static_cast<size_t>(j)] || j == pivot) continue;
                at(i, j) -= f * at(pivot, j);
            }
        }
        done[static_cast<size_t>(pivot)] = true;
    }
    return true;
}

}  // namespace detail

// Symmetric PSD matrix with unit diagonal, stored exactly. Construction
// validates all three invariants with rational arithmetic so that equality
// cases downstream are exact, not approximate.
class CorrelationMatrix {
public:
    static CorrelationMatrix identity(int d) {
        if (d < 1) throw InputError("CorrelationMatrix: dimension must be >= 1");
        std::vector<Rational> e(static_cast<size_t>(d) * d, Rational(0));
        for (int i = 0; i < d; ++i) e[static_cast<size_t>(i) * d + i] = 1;
        return CorrelationMatrix(d, std::move(e), /*validated=*/true);
    }

    static CorrelationMatrix from_entries(int d, std::vector<Rational> entries) {
        if (d < 1) throw InputError("CorrelationMatrix: dimension must be >= 1");
        if (entries.size() != static_cast<size_t>(d) * d)
            throw InputError("CorrelationMatrix: entry count does not match dimension");
        for (int i = 0; i < d; ++i) {
            if (entries[static_cast<size_t>(i) * d + i] != 1)
                throw InputError("CorrelationMatrix: diagonal entry is not 1");
            for (int j = i + 1; j < d; ++j) {
                if (entries[static_cast<size_t>(i) * d + j] != entries[static_cast<size_t>(j) * d + i])
                    throw InputError("CorrelationMatrix: matrix is not symmetric");
            }
        }
        if (!detail::is_psd_exact(d, entries))
            throw InputError("CorrelationMatrix: matrix is not positive semi-definite");
        return CorrelationMatrix(d, std::move(entries), true);
    }

    // Gram matrix of exact unit vectors: PSD and unit-diagonal by construction.
    static CorrelationMatrix gram(const std::vector<std::vector<Rational>>& vectors) {
        const int d = static_cast<int>(vectors.size());
        if (d < 1) throw InputError("CorrelationMatrix::gram: need at least one vector");
        const size_t amb = vectors[0].size();
        std::vector<Rational> e(static_cast<size_t>(d) * d, Rational(0));
        for (int i = 0; i < d; ++i) {
            if (vectors[static_cast<size_t>(i)].size() != amb)
                throw InputError("CorrelationMatrix::gram: mixed ambient dimensions");
            for (int j = i; j < d; ++j) {
                Rational dot{0};
                for (size_t l = 0; l < amb; ++l)
                    dot += vectors[static_cast<size_t>(i)][l] * vectors[static_cast<size_t>(j)][l];
                e[static_cast<size_t>(i) * d + j] = dot;
                e[static_cast<size_t>(j) * d + i] = dot;
            }
            if (e[static_cast<size_t>(i) * d + i] != 1)
                throw InputError("CorrelationMatrix::gram: vector is not a unit vector");
        }
        return CorrelationMatrix(d, std::move(e), true);
    }

    int dimension() const { return dim_; }

    const Rational& at(int i, int j) const {
        return entries_[static_cast<size_t>(i) * dim_ + j];
    }

    // Row-major "a;b;c;..." with exact fractions; used in input digests.
    std::string digest_string() const {
        std::ostringstream os;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                if (i || j) os << ';';
                os << to_fraction_string(at(i, j));
            }
        return os.str();
    }

    friend bool operator==(const CorrelationMatrix& a, const CorrelationMatrix& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    CorrelationMatrix(int d, std::vector<Rational> e, bool) : dim_(d), entries_(std::move(e)) {}

    int dim_;
    std::vector<Rational> entries_;
};

}  // namespace chaoskit
