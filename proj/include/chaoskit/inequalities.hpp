#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/chaos.hpp"
#include "chaoskit/correlation.hpp"
#include "chaoskit/errors.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/moments.hpp"
#include "chaoskit/reports.hpp"

namespace chaoskit {

// --- Theorem-level verifiers. Each returns a structured report; margins of
// --- proven inequalities are asserted by the campaign layer, not here.

// int prod F_i^2 dgamma >= prod int F_i^2 dgamma for pure eigenfunctions,
// with equality exactly on jointly independent families.
inline VerificationReport verify_main(const std::vector<ChaosElement>& fs, int degree_cap = 28,
                                      std::optional<std::uint64_t> seed = std::nullopt) {
    if (fs.empty()) throw InputError("verify_main: empty family");
    std::string digest = "main";
    for (const auto& f : fs) {
        const int k = f.degree();
        if (!f.is_pure(k) || f.is_zero())
            throw InputError("verify_main: factors must be nonzero pure eigenfunctions");
        digest += '|' + to_canonical_string(f);
    }
    std::vector<ChaosElement> squares;
    squares.reserve(fs.size());
    Rational rhs{1};
    for (const auto& f : fs) {
        squares.push_back(multiply(f, f));
        rhs *= expectation(squares.back());
    }
    const Rational lhs = product_expectation(squares, degree_cap);
    return make_exact_report("main", lhs, rhs, std::move(digest), seed);
}

// Hermite Gaussian product inequality: E[prod H_{p_i}(G_i)^2] >= prod p_i!.
inline VerificationReport verify_hgp(const std::vector<int>& p, const CorrelationMatrix& sigma,
                                     int leg_cap = kMatchingLegCap,
                                     std::optional<std::uint64_t> seed = std::nullopt) {
    std::string digest = "hgp|p=";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) digest += ',';
        digest += std::to_string(p[i]);
    }
    digest += "|corr=" + sigma.digest_string();
    const Rational lhs = squared_hermite_moment(p, sigma, leg_cap);
    Rational rhs{1};
    for (int pi : p) rhs *= Rational(factorial(pi));
    return make_exact_report("hgp", lhs, rhs, std::move(digest), seed);
}

inline VerificationReport verify_hgp_float(const std::vector<int>& p, const CorrelationMatrix& sigma,
                                           int leg_cap = kMatchingLegCap,
                                           std::optional<std::uint64_t> seed = std::nullopt) {
    std::string digest = "hgp|p=";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) digest += ',';
        digest += std::to_string(p[i]);
    }
    digest += "|corr=" + sigma.digest_string();
    const int d = sigma.dimension();
    if (static_cast<int>(p.size()) != d) throw InputError("verify_hgp: dimension mismatch");
    int total = 0;
    std::vector<int> degrees, vars;
    for (int i = 0; i < d; ++i) {
        degrees.push_back(p[static_cast<size_t>(i)]);
        degrees.push_back(p[static_cast<size_t>(i)]);
        vars.push_back(i);
        vars.push_back(i);
        total += 2 * p[static_cast<size_t>(i)];
    }
    if (total > leg_cap) throw ResourceError("verify_hgp: legs exceed cap");
    std::vector<std::vector<double>> w(degrees.size(), std::vector<double>(degrees.size()));
    for (size_t a = 0; a < vars.size(); ++a)
        for (size_t b = 0; b < vars.size(); ++b)
            w[a][b] = to_double(sigma.at(vars[a], vars[b]));
    MatchingEvaluator<double> ev(std::move(w), vars);
    const double lhs = ev.eval(degrees);
    double rhs = 1.0;
    for (int pi : p) rhs *= to_double(Rational(factorial(pi)));
    return make_float_report("hgp", lhs, rhs, std::move(digest), seed);
}

// Frenkel's inequality for first-chaos elements plus its averaged
// improvement; both reports are produced from the same inputs.
struct FrenkelReports {
    VerificationReport improved;
    VerificationReport plain;
};

inline FrenkelReports verify_frenkel_improved(const std::vector<std::vector<Rational>>& vs,
                                              int degree_cap = 28,
                                              std::optional<std::uint64_t> seed = std::nullopt) {
    const int d = static_cast<int>(vs.size());
    if (d < 1) throw InputError("verify_frenkel_improved: empty family");
    std::string digest = "frenkel|v=";
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) digest += '|';
        for (size_t j = 0; j < vs[i].size(); ++j) {
            if (j) digest += ',';
            digest += to_fraction_string(vs[i][j]);
        }
    }

    std::vector<ChaosElement> squares;
    std::vector<Rational> norms;
    for (const auto& v : vs) {
        auto f = hermite_of_linear_form(1, v);
        squares.push_back(multiply(f, f));
        norms.push_back(expectation(squares.back()));  // = 1 for unit vectors
    }
    const Rational lhs = product_expectation(squares, degree_cap);

    Rational avg{0};
    for (int i = 0; i < d; ++i) {
        std::vector<ChaosElement> others;
        for (int j = 0; j < d; ++j)
            if (j != i) others.push_back(squares[static_cast<size_t>(j)]);
        avg += norms[static_cast<size_t>(i)] * product_expectation(others, degree_cap);
    }
    avg /= d;

    Rational prod{1};
    for (const auto& n : norms) prod *= n;

    return {make_exact_report("frenkel_improved", lhs, avg, digest, seed),
            make_exact_report("frenkel", lhs, prod, digest, seed)};
}

// Averaged fourth-moment inequality over all nonempty subsets of [d]:
// sum_T E[prod_{i in T} G_i^4] >= sum_T prod_{i in T} 3. The rhs with subsets
// of unit-variance coordinates is 4^d - 1.
inline VerificationReport verify_averaged_fourth(const CorrelationMatrix& sigma, int leg_cap = kMatchingLegCap,
                                                 std::optional<std::uint64_t> seed = std::nullopt) {
    const int d = sigma.dimension();
    if (d > 4) throw ResourceError("verify_averaged_fourth: dimension capped at 4");
    std::string digest = "averaged_fourth|corr=" + sigma.digest_string();

    Rational lhs{0};
    Rational rhs{0};
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<int> exponents(static_cast<size_t>(d), 0);
        Rational indep{1};
        for (int i = 0; i < d; ++i) {
            if ((mask >> i) & 1u) {
                exponents[static_cast<size_t>(i)] = 4;
                indep *= 3;
            }
        }
        lhs += isserlis_moment(exponents, sigma, leg_cap);
        rhs += indep;
    }
    return make_exact_report("averaged_fourth", lhs, rhs, std::move(digest), seed);
}

// Gaussian Product Conjecture probe: E[prod G_i^{2m}] vs prod (2m-1)!!.
// Open for m >= 2, d >= 3; a negative margin is a finding, not a failure.
inline VerificationReport probe_gpc(const CorrelationMatrix& sigma, int m, int leg_cap = kMatchingLegCap,
                                    std::optional<std::uint64_t> seed = std::nullopt) {
    if (m < 1) throw InputError("probe_gpc: m must be >= 1");
    const int d = sigma.dimension();
    if (d * 2 * m > leg_cap) throw ResourceError("probe_gpc: total degree exceeds cap");
    std::string digest = "gpc|m=" + std::to_string(m) + "|corr=" + sigma.digest_string();
    std::vector<int> exponents(static_cast<size_t>(d), 2 * m);
    const Rational lhs = isserlis_moment(exponents, sigma, leg_cap);
    Rational rhs = rational_pow(Rational(double_factorial(2 * m - 1)), static_cast<unsigned>(d));
    return make_exact_report("gpc", lhs, rhs, std::move(digest), seed);
}

// Complex moment inequality (proven): E[|G_1^{p_1}...G_d^{p_d}|^2] >=
// prod E[|G_i^{p_i}|^2].
inline VerificationReport probe_complex(const std::vector<int>& p, const ComplexVectorSet& a,
                                        int leg_cap = kPermanentLegCap,
                                        std::optional<std::uint64_t> seed = std::nullopt) {
    std::string digest = "complex|p=";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) digest += ',';
        digest += std::to_string(p[i]);
    }
    digest += "|a=" + a.digest_string();
    const Rational lhs = complex_moment(p, a, leg_cap);
    Rational rhs{1};
    for (size_t i = 0; i < p.size(); ++i) {
        ComplexVectorSet single{{a.vectors[i]}};
        rhs *= complex_moment({p[i]}, single, leg_cap);
    }
    return make_exact_report("complex", lhs, rhs, std::move(digest), seed);
}

// --- Campaign machinery.

struct CampaignSummary {
    size_t instances = 0;
    size_t holds = 0;
    size_t equalities = 0;
    size_t violations = 0;
    std::vector<VerificationReport> reports;   // sorted by inputs_digest
    std::vector<VerificationReport> findings;  // violated probe instances

    void add(const VerificationReport& r, bool proven) {
        switch (r.status) {
            case Status::holds: ++holds; break;
            case Status::equality: ++equalities; break;
            case Status::violated:
                if (proven)
                    ++violations;
                else
                    findings.push_back(r);
                break;
        }
        reports.push_back(r);
    }

    void finalize() {
        std::sort(reports.begin(), reports.end(),
                  [](const VerificationReport& a, const VerificationReport& b) {
                      return a.inputs_digest < b.inputs_digest;
                  });
    }
};

// Runs one report-producing callback per instance. `proven` decides whether a
// violation counts against the exit code or is merely recorded as a finding.
inline CampaignSummary run_campaign(size_t instances, bool proven,
                                    const std::function<std::vector<VerificationReport>(size_t)>& make) {
    CampaignSummary summary;
    for (size_t i = 0; i < instances; ++i) {
        ++summary.instances;
        for (auto& r : make(i)) summary.add(r, proven);
    }
    summary.finalize();
    return summary;
}

}  // namespace chaoskit
