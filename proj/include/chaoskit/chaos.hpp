#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/errors.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/rational.hpp"

namespace chaoskit {

// Sparse exponent vector over coordinates 0..n-1. Parts are kept sorted by
// coordinate with strictly positive degrees; comparison is lexicographic on
// the (coordinate, degree) pairs, which fixes the canonical term order used
// by serialization.
struct MultiIndex {
    std::vector<std::pair<int, int>> parts;

    static MultiIndex from_dense(std::span<const int> degrees) {
        MultiIndex m;
        for (int j = 0; j < static_cast<int>(degrees.size()); ++j)
            if (degrees[static_cast<size_t>(j)] > 0) m.parts.emplace_back(j, degrees[static_cast<size_t>(j)]);
        return m;
    }

    static MultiIndex single(int coord, int degree) {
        MultiIndex m;
        if (degree > 0) m.parts.emplace_back(coord, degree);
        return m;
    }

    int total_degree() const {
        int t = 0;
        for (const auto& [c, d] : parts) t += d;
        return t;
    }

    int degree_at(int coord) const {
        for (const auto& [c, d] : parts)
            if (c == coord) return d;
        return 0;
    }

    int max_coord() const { return parts.empty() ? -1 : parts.back().first; }

    auto operator<=>(const MultiIndex&) const = default;
};

// Finite Hermite expansion sum_alpha coeff(alpha) prod_j H_{alpha_j}(x_j).
// Zero coefficients are never stored; the map's ordering gives reproducible
// iteration.
struct ChaosElement {
    int dimension = 0;
    std::map<MultiIndex, Rational> coeffs;

    static ChaosElement zero(int n) { return ChaosElement{n, {}}; }

    static ChaosElement constant(int n, Rational c) {
        ChaosElement f{n, {}};
        if (c != 0) f.coeffs.emplace(MultiIndex{}, std::move(c));
        return f;
    }

    // H_k applied to a single coordinate (0-based).
    static ChaosElement hermite(int n, int coord, int k, Rational c = Rational(1)) {
        if (coord < 0 || coord >= n) throw InputError("ChaosElement::hermite: coordinate out of range");
        ChaosElement f{n, {}};
        if (c != 0) f.coeffs.emplace(MultiIndex::single(coord, k), std::move(c));
        return f;
    }

    void add_term(const MultiIndex& alpha, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs.emplace(alpha, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }

    int degree() const {
        int k = 0;
        for (const auto& [alpha, c] : coeffs) k = std::max(k, alpha.total_degree());
        return k;
    }

    bool is_zero() const { return coeffs.empty(); }

    // True when every stored multi-index has total degree exactly k, i.e. the
    // element lies in Ker(L + kI).
    bool is_pure(int k) const {
        for (const auto& [alpha, c] : coeffs)
            if (alpha.total_degree() != k) return false;
        return true;
    }

    ChaosElement& operator+=(const ChaosElement& o) {
        if (o.dimension > dimension) dimension = o.dimension;
        for (const auto& [alpha, c] : o.coeffs) add_term(alpha, c);
        return *this;
    }

    ChaosElement& operator*=(const Rational& c) {
        if (c == 0) {
            coeffs.clear();
            return *this;
        }
        for (auto& [alpha, v] : coeffs) v *= c;
        return *this;
    }

    friend ChaosElement operator+(ChaosElement a, const ChaosElement& b) { return a += b; }
    friend ChaosElement operator*(ChaosElement a, const Rational& c) { return a *= c; }
    friend bool operator==(const ChaosElement& a, const ChaosElement& b) {
        return a.dimension == b.dimension && a.coeffs == b.coeffs;
    }
};

namespace detail {

// Tensor expansion of one product term: for each coordinate the two degrees
// linearize independently, and the branches multiply out.
inline void expand_product_term(const MultiIndex& a, const MultiIndex& b, const Rational& coeff,
                                ChaosElement& out) {
    struct CoordPair {
        int coord;
        int da;
        int db;
    };
    std::vector<CoordPair> merged;
    size_t i = 0, j = 0;
    while (i < a.parts.size() || j < b.parts.size()) {
        if (j == b.parts.size() || (i < a.parts.size() && a.parts[i].first < b.parts[j].first)) {
            merged.push_back({a.parts[i].first, a.parts[i].second, 0});
            ++i;
        } else if (i == a.parts.size() || b.parts[j].first < a.parts[i].first) {
            merged.push_back({b.parts[j].first, 0, b.parts[j].second});
            ++j;
        } else {
            merged.push_back({a.parts[i].first, a.parts[i].second, b.parts[j].second});
            ++i;
            ++j;
        }
    }

    std::vector<std::pair<int, int>> stack;  // (coord, degree) of the branch so far
    stack.reserve(merged.size());
    auto rec = [&](auto&& self, size_t pos, const Rational& c) -> void {
        if (pos == merged.size()) {
            MultiIndex alpha;
            alpha.parts = stack;
            std::erase_if(alpha.parts, [](const auto& p) { return p.second == 0; });
            out.add_term(alpha, c);
            return;
        }
        const auto& cp = merged[pos];
        if (cp.da == 0 || cp.db == 0) {
            stack.emplace_back(cp.coord, cp.da + cp.db);
            self(self, pos + 1, c);
            stack.pop_back();
            return;
        }
        for (const auto& [deg, lc] : linearize(cp.da, cp.db)) {
            stack.emplace_back(cp.coord, deg);
            self(self, pos + 1, Rational(c * lc));
            stack.pop_back();
        }
    };
    rec(rec, 0, coeff);
}

}  // namespace detail

// Pointwise product expanded back over the Hermite basis, coordinate by
// coordinate through the linearization coefficients.
inline ChaosElement multiply(const ChaosElement& f, const ChaosElement& g) {
    if (f.dimension != g.dimension)
        throw InputError("multiply: chaos elements live on different ambient dimensions");
    ChaosElement out = ChaosElement::zero(f.dimension);
    for (const auto& [a, ca] : f.coeffs)
        for (const auto& [b, cb] : g.coeffs) detail::expand_product_term(a, b, Rational(ca * cb), out);
    return out;
}

// Expectation under the standard Gaussian: the coefficient of the empty
// multi-index.
inline Rational expectation(const ChaosElement& f) {
    auto it = f.coeffs.find(MultiIndex{});
    return it == f.coeffs.end() ? Rational(0) : it->second;
}

// E[F G] by orthogonality: matching terms weighted by prod_j alpha_j!.
inline Rational inner_product(const ChaosElement& f, const ChaosElement& g) {
    if (f.dimension != g.dimension)
        throw InputError("inner_product: chaos elements live on different ambient dimensions");
    Rational acc{0};
    auto fi = f.coeffs.begin();
    auto gi = g.coeffs.begin();
    while (fi != f.coeffs.end() && gi != g.coeffs.end()) {
        if (fi->first < gi->first) {
            ++fi;
        } else if (gi->first < fi->first) {
            ++gi;
        } else {
            BigInt norm{1};
            for (const auto& [c, d] : fi->first.parts) norm *= factorial(d);
            acc += fi->second * gi->second * Rational(norm);
            ++fi;
            ++gi;
        }
    }
    return acc;
}

// Expectation of an iterated product. The last factor is folded in through
// the orthogonality pairing instead of a full expansion.
inline Rational product_expectation(const std::vector<ChaosElement>& fs, int degree_cap = 28) {
    if (fs.empty()) return Rational(1);
    int total = 0;
    for (const auto& f : fs) total += f.degree();
    if (total > degree_cap)
        throw ResourceError("product_expectation: total degree " + std::to_string(total) +
                            " exceeds cap " + std::to_string(degree_cap));
    if (fs.size() == 1) return expectation(fs[0]);
    ChaosElement acc = fs[0];
    for (size_t i = 1; i + 1 < fs.size(); ++i) acc = multiply(acc, fs[i]);
    return inner_product(acc, fs.back());
}

// Spectral action of the Ornstein-Uhlenbeck generator: the degree-k component
// is scaled by -k.
inline ChaosElement generator_apply(const ChaosElement& f) {
    ChaosElement out = ChaosElement::zero(f.dimension);
    for (const auto& [alpha, c] : f.coeffs) {
        const int k = alpha.total_degree();
        if (k > 0) out.coeffs.emplace(alpha, Rational(c * Rational(-k)));
    }
    return out;
}

// Dirichlet form int <grad F, grad G> dgamma = -E[F LG] by integration by
// parts; exact through the spectral generator.
inline Rational dirichlet(const ChaosElement& f, const ChaosElement& g) {
    return -inner_product(f, generator_apply(g));
}

// H_p(<v, x>) for an exact rational unit vector v, expanded over the basis:
// sum_{|alpha|=p} p!/prod(alpha_j!) prod v_j^{alpha_j} prod H_{alpha_j}(x_j).
// The result is pure of degree p.
inline ChaosElement hermite_of_linear_form(int p, const std::vector<Rational>& v) {
    if (p < 1) throw InputError("hermite_of_linear_form: degree must be >= 1");
    Rational norm2{0};
    for (const auto& c : v) norm2 += c * c;
    if (norm2 != 1) throw InputError("hermite_of_linear_form: v is not an exact unit vector");
    const int n = static_cast<int>(v.size());
    ChaosElement out = ChaosElement::zero(n);
    const BigInt pfact = factorial(p);

    std::vector<int> alpha(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, int coord, int remaining, const Rational& weight) -> void {
        if (coord == n - 1) {
            if (remaining > 0 && v[static_cast<size_t>(coord)] == 0) return;
            alpha[static_cast<size_t>(coord)] = remaining;
            Rational c = weight * rational_pow(v[static_cast<size_t>(coord)], static_cast<unsigned>(remaining)) /
                         Rational(factorial(remaining));
            out.add_term(MultiIndex::from_dense(alpha), Rational(c * Rational(pfact)));
            alpha[static_cast<size_t>(coord)] = 0;
            return;
        }
        const int top = v[static_cast<size_t>(coord)] == 0 ? 0 : remaining;
        for (int a = 0; a <= top; ++a) {
            alpha[static_cast<size_t>(coord)] = a;
            self(self, coord + 1,
                 remaining - a,
                 Rational(weight * rational_pow(v[static_cast<size_t>(coord)], static_cast<unsigned>(a)) /
                          Rational(factorial(a))));
        }
        alpha[static_cast<size_t>(coord)] = 0;
    };
    rec(rec, 0, p, Rational(1));
    return out;
}

// Basis change Hermite -> monomials. The returned map is keyed by exponent
// multi-indices.
inline std::map<MultiIndex, Rational> to_monomials(const ChaosElement& f) {
    std::map<MultiIndex, Rational> out;
    auto add = [&](const MultiIndex& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = out.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    };
    std::vector<std::pair<int, int>> stack;
    for (const auto& [alpha, c] : f.coeffs) {
        auto rec = [&](auto&& self, size_t pos, const Rational& acc) -> void {
            if (pos == alpha.parts.size()) {
                MultiIndex m;
                m.parts = stack;
                std::erase_if(m.parts, [](const auto& p) { return p.second == 0; });
                add(m, acc);
                return;
            }
            const auto [coord, deg] = alpha.parts[pos];
            const HermitePoly h = hermite_coeffs(deg);
            for (int j = 0; j <= deg; ++j) {
                const Rational& hc = h.coeffs[static_cast<size_t>(j)];
                if (hc == 0) continue;
                stack.emplace_back(coord, j);
                self(self, pos + 1, Rational(acc * hc));
                stack.pop_back();
            }
        };
        rec(rec, 0, c);
    }
    return out;
}

// Basis change monomials -> Hermite, using
// x^m = m! sum_{s <= m/2} H_{m-2s}(x) / (2^s s! (m-2s)!).
inline ChaosElement from_monomials(int dimension, const std::map<MultiIndex, Rational>& monomials) {
    ChaosElement out = ChaosElement::zero(dimension);
    std::vector<std::pair<int, int>> stack;
    for (const auto& [mono, c] : monomials) {
        auto rec = [&](auto&& self, size_t pos, const Rational& acc) -> void {
            if (pos == mono.parts.size()) {
                MultiIndex alpha;
                alpha.parts = stack;
                std::erase_if(alpha.parts, [](const auto& p) { return p.second == 0; });
                out.add_term(alpha, acc);
                return;
            }
            const auto [coord, m] = mono.parts[pos];
            const BigInt mfact = factorial(m);
            BigInt pow2{1};
            for (int s = 0; 2 * s <= m; ++s) {
                Rational w = Rational(mfact) / Rational(pow2 * factorial(s) * factorial(m - 2 * s));
                stack.emplace_back(coord, m - 2 * s);
                self(self, pos + 1, Rational(acc * w));
                stack.pop_back();
                pow2 *= 2;
            }
        };
        rec(rec, 0, c);
    }
    return out;
}

inline Rational eval_exact(const ChaosElement& f, std::span<const Rational> x) {
    if (static_cast<int>(x.size()) != f.dimension)
        throw InputError("eval_exact: point dimension mismatch");
    Rational acc{0};
    for (const auto& [alpha, c] : f.coeffs) {
        Rational term = c;
        for (const auto& [coord, deg] : alpha.parts)
            term *= hermite_eval(deg, x[static_cast<size_t>(coord)]);
        acc += term;
    }
    return acc;
}

inline double eval_double(const ChaosElement& f, std::span<const double> x) {
    if (static_cast<int>(x.size()) != f.dimension)
        throw InputError("eval_double: point dimension mismatch");
    double acc = 0.0;
    for (const auto& [alpha, c] : f.coeffs) {
        double term = to_double(c);
        for (const auto& [coord, deg] : alpha.parts)
            term *= hermite_eval(deg, x[static_cast<size_t>(coord)]);
        acc += term;
    }
    return acc;
}

// Canonical text form "n; a_1:...:a_n=num/den; ..." with terms in canonical
// multi-index order. Byte-stable for identical elements.
inline std::string to_canonical_string(const ChaosElement& f) {
    std::ostringstream os;
    os << f.dimension;
    for (const auto& [alpha, c] : f.coeffs) {
        os << "; ";
        for (int j = 0; j < f.dimension; ++j) {
            if (j) os << ':';
            os << alpha.degree_at(j);
        }
        os << '=' << to_fraction_string(c);
    }
    return os.str();
}

inline ChaosElement parse_chaos_element(const std::string& text) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (start <= text.size()) {
        size_t pos = text.find(';', start);
        if (pos == std::string::npos) pos = text.size();
        std::string piece = text.substr(start, pos - start);
        const auto a = piece.find_first_not_of(" \t");
        const auto b = piece.find_last_not_of(" \t");
        fields.push_back(a == std::string::npos ? std::string() : piece.substr(a, b - a + 1));
        start = pos + 1;
    }
    if (fields.empty() || fields[0].empty()) throw InputError("parse_chaos_element: missing dimension");
    int n = 0;
    try {
        n = std::stoi(fields[0]);
    } catch (const std::exception&) {
        throw InputError("parse_chaos_element: malformed dimension: " + fields[0]);
    }
    if (n < 1) throw InputError("parse_chaos_element: dimension must be >= 1");
    ChaosElement f = ChaosElement::zero(n);
    for (size_t t = 1; t < fields.size(); ++t) {
        if (fields[t].empty()) continue;
        const auto eq = fields[t].find('=');
        if (eq == std::string::npos) throw InputError("parse_chaos_element: term without '=': " + fields[t]);
        std::vector<int> degrees;
        std::stringstream alpha_ss(fields[t].substr(0, eq));
        std::string tok;
        while (std::getline(alpha_ss, tok, ':')) {
            try {
                degrees.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw InputError("parse_chaos_element: malformed degree: " + tok);
            }
        }
        if (static_cast<int>(degrees.size()) != n)
            throw InputError("parse_chaos_element: multi-index length does not match dimension");
        for (int d : degrees)
            if (d < 0) throw InputError("parse_chaos_element: negative degree");
        f.add_term(MultiIndex::from_dense(degrees), parse_rational(fields[t].substr(eq + 1)));
    }
    return f;
}

}  // namespace chaoskit
