#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chaoskit/chaos.hpp"
#include "chaoskit/correlation.hpp"
#include "chaoskit/errors.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/rational.hpp"

namespace chaoskit {

inline constexpr int kMatchingLegCap = 28;
inline constexpr int kPermanentLegCap = 14;

namespace detail {

struct DegreeVectorHash {
    size_t operator()(const std::vector<int>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9E3779B97F4A7C15ULL;
            h *= 1099511628211ULL;
        }
        return static_cast<size_t>(h);
    }
};

}  // namespace detail

// Sum over perfect matchings of the query's legs with no edge inside a node,
// each edge weighted by the correlation between the two endpoint variables.
// Memoized on the vector of remaining per-node degrees; nodes sharing a
// variable are exchangeable, so their residual degrees are kept sorted to
// collapse equivalent states.
template <typename Scalar>
class MatchingEvaluator {
public:
    MatchingEvaluator(std::vector<std::vector<Scalar>> node_weights, std::vector<int> node_group)
        : weights_(std::move(node_weights)), group_(std::move(node_group)) {
        const size_t n = weights_.size();
        packable_ = n <= 10;
        for (size_t a = 0; a < n; ++a) {
            size_t b = a;
            while (b + 1 < n && group_[b + 1] == group_[a]) ++b;
            for (size_t i = a; i <= b; ++i) group_span_.emplace_back(a, b);
            a = b;
        }
    }

    Scalar eval(std::vector<int> degrees) {
        if (degrees.size() != weights_.size())
            throw InputError("MatchingEvaluator: degree vector size mismatch");
        const int total = std::accumulate(degrees.begin(), degrees.end(), 0);
        if (total % 2 != 0) return Scalar(0);
        if (packable_)
            for (int d : degrees) packable_ = packable_ && d < 64;
        canonicalize(degrees);
        return eval_canonical(degrees);
    }

private:
    void canonicalize(std::vector<int>& degs) const {
        for (size_t i = 0; i < degs.size();) {
            const auto [lo, hi] = group_span_[i];
            std::sort(degs.begin() + static_cast<long>(lo), degs.begin() + static_cast<long>(hi) + 1,
                      std::greater<int>());
            i = hi + 1;
        }
    }

    // 6 bits per node; usable whenever there are at most 10 nodes of degree
    // < 64, which covers the hot squared-moment path.
    static std::uint64_t pack(const std::vector<int>& degs) {
        std::uint64_t key = 0;
        for (int d : degs) key = (key << 6) | static_cast<std::uint64_t>(d);
        return key;
    }

    Scalar eval_canonical(const std::vector<int>& degs) {
        size_t first = degs.size();
        for (size_t a = 0; a < degs.size(); ++a)
            if (degs[a] > 0) {
                first = a;
                break;
            }
        if (first == degs.size()) return Scalar(1);

        if (packable_) {
            if (auto it = packed_memo_.find(pack(degs)); it != packed_memo_.end()) return it->second;
        } else {
            if (auto it = memo_.find(degs); it != memo_.end()) return it->second;
        }

        Scalar acc(0);
        std::vector<int> next = degs;
        --next[first];
        for (size_t b = 0; b < degs.size(); ++b) {
            if (b == first || degs[b] == 0) continue;
            const Scalar w = weights_[first][b];
            if (w == Scalar(0)) continue;
            --next[b];
            std::vector<int> key = next;
            canonicalize(key);
            acc += Scalar(degs[b]) * w * eval_canonical(key);
            ++next[b];
        }
        if (packable_)
            packed_memo_.emplace(pack(degs), acc);
        else
            memo_.emplace(degs, acc);
        return acc;
    }

    std::vector<std::vector<Scalar>> weights_;
    std::vector<int> group_;
    std::vector<std::pair<size_t, size_t>> group_span_;
    bool packable_ = false;
    std::unordered_map<std::vector<int>, Scalar, detail::DegreeVectorHash> memo_;
    std::unordered_map<std::uint64_t, Scalar> packed_memo_;
};

// One node per Hermite factor: E[prod_a H_{p_a}(G_{v_a})]. Variable ids are
// 1-based as in query files.
struct MomentQuery {
    std::vector<std::pair<int, int>> nodes;  // (variable_id, hermite_degree)
    CorrelationMatrix correlation;

    std::string digest_string() const {
        std::string s = "nodes=";
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(nodes[i].first) + ':' + std::to_string(nodes[i].second);
        }
        s += "|corr=" + correlation.digest_string();
        return s;
    }
};

namespace detail {

template <typename Scalar>
Scalar correlation_entry(const CorrelationMatrix& c, int i, int j);

template <>
inline Rational correlation_entry<Rational>(const CorrelationMatrix& c, int i, int j) {
    return c.at(i, j);
}

template <>
inline double correlation_entry<double>(const CorrelationMatrix& c, int i, int j) {
    return to_double(c.at(i, j));
}

}  // namespace detail

inline Rational hermite_product_moment(const MomentQuery& q, int leg_cap = kMatchingLegCap) {
    const int d = q.correlation.dimension();
    int total = 0;
    std::vector<int> degrees;
    std::vector<int> var_of_node;
    degrees.reserve(q.nodes.size());
    for (const auto& [var, deg] : q.nodes) {
        if (var < 1 || var > d) throw InputError("hermite_product_moment: variable id out of range");
        if (deg < 1) throw InputError("hermite_product_moment: node degree must be >= 1");
        degrees.push_back(deg);
        var_of_node.push_back(var - 1);
        total += deg;
    }
    if (total > leg_cap)
        throw ResourceError("hermite_product_moment: " + std::to_string(total) + " legs exceed cap " +
                            std::to_string(leg_cap));
    if (total % 2 != 0) return Rational(0);

    // Group nodes by variable so the evaluator can canonicalize.
    std::vector<size_t> order(degrees.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return var_of_node[a] < var_of_node[b]; });
    std::vector<int> sorted_deg, sorted_var;
    for (size_t idx : order) {
        sorted_deg.push_back(degrees[idx]);
        sorted_var.push_back(var_of_node[idx]);
    }
    const size_t n = sorted_deg.size();
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) w[a][b] = q.correlation.at(sorted_var[a], sorted_var[b]);

    MatchingEvaluator<Rational> ev(std::move(w), sorted_var);
    return ev.eval(sorted_deg);
}

// E[H_{p_1}(G_1)^2 ... H_{p_d}(G_d)^2]: each (i, p_i) node duplicated.
inline Rational squared_hermite_moment(const std::vector<int>& p, const CorrelationMatrix& sigma,
                                       int leg_cap = kMatchingLegCap) {
    if (static_cast<int>(p.size()) != sigma.dimension())
        throw InputError("squared_hermite_moment: length of p must match the correlation dimension");
    MomentQuery q{{}, sigma};
    for (size_t i = 0; i < p.size(); ++i) {
        q.nodes.emplace_back(static_cast<int>(i) + 1, p[i]);
        q.nodes.emplace_back(static_cast<int>(i) + 1, p[i]);
    }
    return hermite_product_moment(q, leg_cap);
}

namespace detail {

// Raw-moment pairing sum with self-edges allowed; state is the vector of
// remaining exponents per variable.
template <typename Scalar>
class IsserlisEvaluator {
public:
    explicit IsserlisEvaluator(std::vector<std::vector<Scalar>> cov) : cov_(std::move(cov)) {}

    Scalar eval(const std::vector<int>& exponents) {
        const int total = std::accumulate(exponents.begin(), exponents.end(), 0);
        if (total % 2 != 0) return Scalar(0);
        return eval_rec(exponents);
    }

private:
    Scalar eval_rec(const std::vector<int>& ex) {
        size_t first = ex.size();
        for (size_t i = 0; i < ex.size(); ++i)
            if (ex[i] > 0) {
                first = i;
                break;
            }
        if (first == ex.size()) return Scalar(1);
        if (auto it = memo_.find(ex); it != memo_.end()) return it->second;

        Scalar acc(0);
        std::vector<int> next = ex;
        --next[first];
        if (ex[first] >= 2) {
            --next[first];
            acc += Scalar(ex[first] - 1) * cov_[first][first] * eval_rec(next);
            ++next[first];
        }
        for (size_t j = first + 1; j < ex.size(); ++j) {
            if (ex[j] == 0 || cov_[first][j] == Scalar(0)) continue;
            --next[j];
            acc += Scalar(ex[j]) * cov_[first][j] * eval_rec(next);
            ++next[j];
        }
        memo_.emplace(ex, acc);
        return acc;
    }

    std::vector<std::vector<Scalar>> cov_;
    std::unordered_map<std::vector<int>, Scalar, DegreeVectorHash> memo_;
};

}  // namespace detail

// E[prod_i G_i^{m_i}] over all pairings (Isserlis); the independent oracle
// for the flat-edge-free engine above.
inline Rational isserlis_moment(const std::vector<int>& exponents, const CorrelationMatrix& sigma,
                                int leg_cap = kMatchingLegCap) {
    if (static_cast<int>(exponents.size()) != sigma.dimension())
        throw InputError("isserlis_moment: exponent count must match the correlation dimension");
    int total = 0;
    for (int m : exponents) {
        if (m < 0) throw InputError("isserlis_moment: negative exponent");
        total += m;
    }
    if (total > leg_cap)
        throw ResourceError("isserlis_moment: " + std::to_string(total) + " legs exceed cap " +
                            std::to_string(leg_cap));
    const int d = sigma.dimension();
    std::vector<std::vector<Rational>> cov(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cov[static_cast<size_t>(i)][static_cast<size_t>(j)] = sigma.at(i, j);
    detail::IsserlisEvaluator<Rational> ev(std::move(cov));
    return ev.eval(exponents);
}

// Complex Gaussian vectors G_k = <a_k, Z>, Z = X + iY with X, Y independent
// standard; so E[Z_l conj(Z_l)] = 2 and E[G_i conj(G_j)] = 2 <a_i, conj(a_j)>.
struct ComplexVectorSet {
    std::vector<std::vector<ComplexRational>> vectors;

    int count() const { return static_cast<int>(vectors.size()); }

    ComplexRational pair_covariance(int i, int j) const {
        const auto& a = vectors[static_cast<size_t>(i)];
        const auto& b = vectors[static_cast<size_t>(j)];
        if (a.size() != b.size()) throw InputError("ComplexVectorSet: mixed ambient dimensions");
        ComplexRational acc;
        for (size_t l = 0; l < a.size(); ++l) acc += a[l] * b[l].conj();
        return ComplexRational(Rational(2) * acc.re, Rational(2) * acc.im);
    }

    std::string digest_string() const {
        std::string s;
        for (size_t i = 0; i < vectors.size(); ++i) {
            if (i) s += '|';
            for (size_t l = 0; l < vectors[i].size(); ++l) {
                if (l) s += ',';
                s += to_fraction_string(vectors[i][l].re) + "+i*" + to_fraction_string(vectors[i][l].im);
            }
        }
        return s;
    }
};

// Ryser's inclusion-exclusion permanent with Gray-code updates of the row
// sums; O(2^m m) scalar operations.
template <typename Scalar>
Scalar permanent(const std::vector<std::vector<Scalar>>& m) {
    const size_t n = m.size();
    if (n == 0) return Scalar(1);
    if (n > 62) throw ResourceError("permanent: matrix too large");
    std::vector<Scalar> row_sums(n, Scalar(0));
    Scalar total(0);
    std::uint64_t prev_gray = 0;
    const std::uint64_t end = 1ULL << n;
    for (std::uint64_t k = 1; k < end; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t diff = gray ^ prev_gray;
        size_t col = 0;
        while (!((diff >> col) & 1ULL)) ++col;
        const bool added = (gray >> col) & 1ULL;
        for (size_t r = 0; r < n; ++r) {
            if (added)
                row_sums[r] += m[r][col];
            else
                row_sums[r] -= m[r][col];
        }
        Scalar prod(1);
        for (size_t r = 0; r < n; ++r) prod = prod * row_sums[r];
        const int bits = std::popcount(gray);
        if ((n - static_cast<size_t>(bits)) % 2 == 0)
            total += prod;
        else
            total -= prod;
        prev_gray = gray;
    }
    return total;
}

// E[|G_1^{p_1} ... G_d^{p_d}|^2] as the permanent of the sesquilinear
// covariance matrix with row/column i repeated p_i times. Real for any input;
// exact for rational vectors.
inline Rational complex_moment(const std::vector<int>& p, const ComplexVectorSet& a,
                               int leg_cap = kPermanentLegCap) {
    if (static_cast<int>(p.size()) != a.count())
        throw InputError("complex_moment: exponent count must match the number of vectors");
    int total = 0;
    for (int pi : p) {
        if (pi < 1) throw InputError("complex_moment: exponents must be >= 1");
        total += pi;
    }
    if (total > leg_cap)
        throw ResourceError("complex_moment: " + std::to_string(total) + " legs exceed cap " +
                            std::to_string(leg_cap));
    for (const auto& v : a.vectors) {
        bool nonzero = false;
        for (const auto& c : v) nonzero = nonzero || !c.is_zero();
        if (!nonzero) throw InputError("complex_moment: zero vector in the set");
    }

    const int d = a.count();
    std::vector<std::vector<ComplexRational>> cov(static_cast<size_t>(d),
                                                  std::vector<ComplexRational>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) cov[static_cast<size_t>(i)][static_cast<size_t>(j)] = a.pair_covariance(i, j);

    std::vector<int> owner;
    for (int i = 0; i < d; ++i)
        for (int r = 0; r < p[static_cast<size_t>(i)]; ++r) owner.push_back(i);
    const size_t mdim = owner.size();
    std::vector<std::vector<ComplexRational>> mat(mdim, std::vector<ComplexRational>(mdim));
    for (size_t r = 0; r < mdim; ++r)
        for (size_t c = 0; c < mdim; ++c)
            mat[r][c] = cov[static_cast<size_t>(owner[r])][static_cast<size_t>(owner[c])];

    const ComplexRational result = permanent(mat);
    if (result.im != 0) throw std::logic_error("complex_moment: permanent has nonzero imaginary part");
    return result.re;
}

// Cov(F^2, G^2) = E[F^2 G^2] - E[F^2] E[G^2], exact through the chaos
// calculus. Zero exactly characterizes independence for pure chaotic F, G.
inline Rational cov_of_squares(const ChaosElement& f, const ChaosElement& g) {
    const ChaosElement f2 = multiply(f, f);
    const ChaosElement g2 = multiply(g, g);
    return inner_product(f2, g2) - expectation(f2) * expectation(g2);
}

}  // namespace chaoskit
