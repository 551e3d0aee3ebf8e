#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "chaoskit/fixtures.hpp"
#include "chaoskit/inequalities.hpp"

using namespace chaoskit;

namespace {

CorrelationMatrix corr2(const Rational& rho) {
    return CorrelationMatrix::from_entries(2, {Rational(1), rho, rho, Rational(1)});
}

CorrelationMatrix corr3_pairwise(const Rational& rho) {
    return CorrelationMatrix::from_entries(
        3, {Rational(1), rho, rho, rho, Rational(1), rho, rho, rho, Rational(1)});
}

}  // namespace

TEST_CASE("verify_main") {
    SECTION("disjoint coordinates reach equality") {
        auto f1 = ChaosElement::hermite(2, 0, 2);
        auto f2 = ChaosElement::hermite(2, 1, 1);
        auto r = verify_main({f1, f2});
        REQUIRE(r.status == Status::equality);
        REQUIRE(std::get<Rational>(r.margin.value) == 0);
    }
    SECTION("H_1 pair on one coordinate: E[x^4] = 3 vs 1") {
        auto x = ChaosElement::hermite(1, 0, 1);
        auto r = verify_main({x, x});
        REQUIRE(std::get<Rational>(r.lhs.value) == 3);
        REQUIRE(std::get<Rational>(r.rhs.value) == 1);
        REQUIRE(std::get<Rational>(r.margin.value) == 2);
        REQUIRE(r.status == Status::holds);
    }
    SECTION("correlated linear forms: 1 + 2 rho^2") {
        auto f1 = ChaosElement::hermite(2, 0, 1);
        auto f2 = hermite_of_linear_form(1, {Rational(3, 5), Rational(4, 5)});
        auto r = verify_main({f1, f2});
        REQUIRE(std::get<Rational>(r.lhs.value) == Rational(43, 25));
        REQUIRE(std::get<Rational>(r.rhs.value) == 1);
        REQUIRE(r.status == Status::holds);
    }
    SECTION("impure input rejected") {
        auto impure = ChaosElement::hermite(1, 0, 1) + ChaosElement::hermite(1, 0, 2);
        REQUIRE_THROWS_AS(verify_main({impure}), InputError);
    }
    SECTION("randomized campaign never sees a negative margin") {
        auto summary = run_campaign(200, true, [](size_t i) {
            SplitMix64 g = substream(31, i);
            const int d = static_cast<int>(g.uniform_int(2, 3));
            const int n = static_cast<int>(g.uniform_int(2, 4));
            std::vector<ChaosElement> fs;
            for (int j = 0; j < d; ++j)
                fs.push_back(fixtures::random_pure_element(n, static_cast<int>(g.uniform_int(1, 3)), 3, g));
            return std::vector<VerificationReport>{verify_main(fs, 28, 31)};
        });
        REQUIRE(summary.instances == 200);
        REQUIRE(summary.violations == 0);
    }
    SECTION("equality detection on constructed fixtures") {
        for (int trial = 0; trial < 20; ++trial) {
            SplitMix64 g = substream(32, static_cast<std::uint64_t>(trial));
            auto fs = fixtures::disjoint_pure_family(
                {static_cast<int>(g.uniform_int(1, 3)), static_cast<int>(g.uniform_int(1, 3))}, 2, g);
            REQUIRE(verify_main(fs).status == Status::equality);

            // Correlated pair of first-chaos elements with rho != 0.
            auto v = fixtures::rational_unit_vector(2, g);
            if (v[0] != 0) {
                auto f1 = ChaosElement::hermite(2, 0, 1);
                auto f2 = hermite_of_linear_form(1, v);
                REQUIRE(verify_main({f1, f2}).status == Status::holds);
            }
        }
    }
}

TEST_CASE("verify_hgp") {
    SECTION("identity correlation gives equality") {
        auto r = verify_hgp({2, 3}, CorrelationMatrix::identity(2));
        REQUIRE(r.status == Status::equality);
        REQUIRE(std::get<Rational>(r.lhs.value) == 12);
    }
    SECTION("p = (2,2), rho = 1/2: 27/2 vs 4") {
        auto r = verify_hgp({2, 2}, corr2(Rational(1, 2)));
        REQUIRE(std::get<Rational>(r.lhs.value) == Rational(27, 2));
        REQUIRE(std::get<Rational>(r.rhs.value) == 4);
        REQUIRE(std::get<Rational>(r.margin.value) == Rational(19, 2));
    }
    SECTION("p = (1,1): margin is 2 rho^2") {
        for (const Rational& rho : {Rational(0), Rational(1, 4), Rational(-1, 2)}) {
            auto r = verify_hgp({1, 1}, corr2(rho));
            REQUIRE(std::get<Rational>(r.margin.value) == Rational(2) * rational_pow(rho, 2));
        }
    }
    SECTION("float mode mirrors the exact engine") {
        auto rexact = verify_hgp({2, 2}, corr2(Rational(1, 2)));
        auto rfloat = verify_hgp_float({2, 2}, corr2(Rational(1, 2)));
        REQUIRE(rfloat.arithmetic == Arithmetic::floating);
        REQUIRE(std::get<double>(rfloat.lhs.value) == Catch::Approx(rexact.lhs.as_double()).epsilon(1e-12));
    }
    SECTION("campaign on Gram fixtures, equality only at identity") {
        auto summary = run_campaign(200, true, [](size_t i) {
            SplitMix64 g = substream(33, i);
            const int d = static_cast<int>(g.uniform_int(2, 4));
            std::vector<int> p(static_cast<size_t>(d));
            int total = 0;
            for (auto& pi : p) {
                pi = static_cast<int>(g.uniform_int(1, 4));
                total += pi;
            }
            while (2 * total > kMatchingLegCap) {
                for (auto& pi : p)
                    if (pi > 1) {
                        --pi;
                        --total;
                        if (2 * total <= kMatchingLegCap) break;
                    }
            }
            auto sigma = fixtures::random_gram_correlation(d, g);
            return std::vector<VerificationReport>{verify_hgp(p, sigma, kMatchingLegCap, 33)};
        });
        REQUIRE(summary.instances == 200);
        REQUIRE(summary.violations == 0);
        // Block-independent fixture: identity correlation.
        auto eq = verify_hgp({3, 1, 2}, CorrelationMatrix::identity(3));
        REQUIRE(eq.status == Status::equality);
    }
}

TEST_CASE("verify_frenkel_improved") {
    SECTION("orthonormal vectors: equality at 1") {
        std::vector<std::vector<Rational>> vs{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
        auto r = verify_frenkel_improved(vs);
        REQUIRE(std::get<Rational>(r.improved.lhs.value) == 1);
        REQUIRE(r.improved.status == Status::equality);
        REQUIRE(r.plain.status == Status::equality);
    }
    SECTION("d = 2 at rho = 3/5: lhs = 1 + 2 rho^2, improved rhs = 1") {
        std::vector<std::vector<Rational>> vs{{Rational(1), Rational(0)}, {Rational(3, 5), Rational(4, 5)}};
        auto r = verify_frenkel_improved(vs);
        REQUIRE(std::get<Rational>(r.improved.lhs.value) == Rational(43, 25));
        REQUIRE(std::get<Rational>(r.improved.rhs.value) == 1);
        REQUIRE(std::get<Rational>(r.plain.rhs.value) == 1);
    }
    SECTION("d = 3, pairwise rho = 1/2: frozen oracle values 7/2 vs 3/2") {
        // Exact unit vectors with pairwise inner product exactly 1/2 are not
        // rational in R^3, so the two sides are checked on the correlation
        // matrix directly; the Isserlis oracle froze lhs = 7/2 and each
        // two-factor product E[G_j^2 G_k^2] = 3/2.
        auto sigma = corr3_pairwise(Rational(1, 2));
        const Rational lhs = isserlis_moment({2, 2, 2}, sigma);
        REQUIRE(lhs == Rational(7, 2));
        Rational averaged{0};
        averaged += isserlis_moment({0, 2, 2}, sigma);
        averaged += isserlis_moment({2, 0, 2}, sigma);
        averaged += isserlis_moment({2, 2, 0}, sigma);
        averaged /= 3;
        REQUIRE(averaged == Rational(3, 2));
        REQUIRE(lhs >= averaged);
    }
    SECTION("improved bound dominates the plain bound on random families") {
        for (int trial = 0; trial < 200; ++trial) {
            SplitMix64 g = substream(34, static_cast<std::uint64_t>(trial));
            const int d = static_cast<int>(g.uniform_int(2, 3));
            std::vector<std::vector<Rational>> vs;
            for (int i = 0; i < d; ++i) vs.push_back(fixtures::rational_unit_vector(d, g));
            auto r = verify_frenkel_improved(vs, 28, 34);
            REQUIRE(r.improved.status != Status::violated);
            REQUIRE(r.plain.status != Status::violated);
            // improved rhs >= plain rhs: the average dominates the product
            // because each E[prod_{j != i} F_j^2] >= prod_{j != i} E[F_j^2].
            REQUIRE(std::get<Rational>(r.improved.rhs.value) >= std::get<Rational>(r.plain.rhs.value));
        }
    }
}

TEST_CASE("verify_averaged_fourth") {
    SECTION("d = 3 rhs is 63 over all nonempty subsets; 54 after dropping singletons") {
        auto r = verify_averaged_fourth(corr3_pairwise(Rational(1, 2)));
        REQUIRE(std::get<Rational>(r.rhs.value) == 63);
        // The paper's d = 3 display omits the three singleton terms, whose
        // contributions (E[G_i^4] = 3 each) cancel between the two sides:
        // 63 - 3*3 = 54.
        REQUIRE(std::get<Rational>(r.rhs.value) - Rational(3) * Rational(3) == 54);
        // Frozen lhs from the brute-force oracle at pairwise rho = 1/2.
        REQUIRE(std::get<Rational>(r.lhs.value) ==
                Rational(1431, 2) + Rational(3) * Rational(57, 2) + Rational(3) * Rational(3));
        REQUIRE(r.status == Status::holds);
    }
    SECTION("d = 2 identity: equality at 15") {
        auto r = verify_averaged_fourth(CorrelationMatrix::identity(2));
        REQUIRE(std::get<Rational>(r.lhs.value) == 15);
        REQUIRE(std::get<Rational>(r.rhs.value) == 15);
        REQUIRE(r.status == Status::equality);
    }
    SECTION("d = 2, rho = 1: 105 + 2*3 + E[G^8] terms") {
        auto r = verify_averaged_fourth(corr2(Rational(1)));
        // Subsets: {1,2} -> E[G^8] = 105, {1} and {2} -> E[G^4] = 3.
        REQUIRE(std::get<Rational>(r.lhs.value) == Rational(105 + 3 + 3));
        REQUIRE(std::get<Rational>(r.rhs.value) == 15);
    }
    SECTION("dimension cap") {
        REQUIRE_THROWS_AS(verify_averaged_fourth(CorrelationMatrix::identity(5)), ResourceError);
    }
    SECTION("campaign on Gram fixtures") {
        auto summary = run_campaign(200, true, [](size_t i) {
            SplitMix64 g = substream(35, i);
            const int d = static_cast<int>(g.uniform_int(2, 3));
            return std::vector<VerificationReport>{
                verify_averaged_fourth(fixtures::random_gram_correlation(d, g), kMatchingLegCap, 35)};
        });
        REQUIRE(summary.violations == 0);
    }
}

TEST_CASE("probe_gpc") {
    SECTION("m = 1 is Frenkel's proven inequality") {
        for (int trial = 0; trial < 20; ++trial) {
            SplitMix64 g = substream(36, static_cast<std::uint64_t>(trial));
            auto r = probe_gpc(fixtures::random_gram_correlation(3, g), 1);
            REQUIRE(r.status != Status::violated);
        }
    }
    SECTION("d = 2, m = 2 at rho = 1/2: frozen 57/2 vs 9") {
        auto r = probe_gpc(corr2(Rational(1, 2)), 2);
        REQUIRE(std::get<Rational>(r.lhs.value) == Rational(57, 2));
        REQUIRE(std::get<Rational>(r.rhs.value) == 9);
    }
    SECTION("identity gives equality") {
        auto r = probe_gpc(CorrelationMatrix::identity(3), 2);
        REQUIRE(r.status == Status::equality);
    }
    SECTION("probe campaign records findings without counting violations") {
        auto summary = run_campaign(200, false, [](size_t i) {
            SplitMix64 g = substream(37, i);
            const int d = static_cast<int>(g.uniform_int(2, 3));
            const int m = static_cast<int>(g.uniform_int(2, 3));
            if (d * 2 * m > kMatchingLegCap) return std::vector<VerificationReport>{};
            return std::vector<VerificationReport>{
                probe_gpc(fixtures::random_gram_correlation(d, g), m, kMatchingLegCap, 37)};
        });
        REQUIRE(summary.violations == 0);
        REQUIRE(summary.findings.empty());  // the conjecture is expected to hold
    }
}

TEST_CASE("probe_complex") {
    SECTION("d = 1 is always equality") {
        ComplexVectorSet a{{{ComplexRational(Rational(1, 2), Rational(1, 3))}}};
        auto r = probe_complex({3}, a);
        REQUIRE(r.status == Status::equality);
    }
    SECTION("orthogonal vectors give equality") {
        ComplexVectorSet a{{{ComplexRational(Rational(1), Rational(0)), ComplexRational(Rational(0), Rational(1))},
                            {ComplexRational(Rational(1, 2), Rational(0)), ComplexRational(Rational(0), Rational(-1, 2))}}};
        auto r = probe_complex({2, 2}, a);
        REQUIRE(r.status == Status::equality);
    }
    SECTION("d = 2, p = (1,1): margin |c12|^2") {
        ComplexVectorSet a{{{ComplexRational(Rational(1), Rational(0)), ComplexRational(Rational(0), Rational(0))},
                            {ComplexRational(Rational(3, 5), Rational(0)), ComplexRational(Rational(4, 5), Rational(0))}}};
        auto r = probe_complex({1, 1}, a);
        REQUIRE(std::get<Rational>(r.margin.value) == Rational(36, 25));
    }
    SECTION("randomized campaign: Theorem 1.3 never violated") {
        auto summary = run_campaign(200, true, [](size_t i) {
            SplitMix64 g = substream(38, i);
            const int d = static_cast<int>(g.uniform_int(1, 3));
            std::vector<int> p(static_cast<size_t>(d));
            int total = 0;
            for (auto& pi : p) {
                pi = static_cast<int>(g.uniform_int(1, 3));
                total += pi;
            }
            if (total > kPermanentLegCap) return std::vector<VerificationReport>{};
            return std::vector<VerificationReport>{
                probe_complex(p, fixtures::random_complex_vectors(d, g), kPermanentLegCap, 38)};
        });
        REQUIRE(summary.violations == 0);
    }
}

TEST_CASE("report plumbing") {
    SECTION("JSON schema fields") {
        auto r = verify_hgp({2, 2}, corr2(Rational(1, 2)), kMatchingLegCap, 7);
        auto j = to_json(r);
        REQUIRE(j.at("inequality_id") == "hgp");
        REQUIRE(j.at("lhs") == "27/2");
        REQUIRE(j.at("rhs") == "4/1");
        REQUIRE(j.at("margin") == "19/2");
        REQUIRE(j.at("status") == "holds");
        REQUIRE(j.at("arithmetic") == "exact");
        REQUIRE(j.at("seed") == 7);
        REQUIRE(j.contains("inputs_digest"));
    }
    SECTION("byte-identical reports for identical inputs and seed") {
        auto a = verify_hgp({2, 1}, corr2(Rational(1, 4)), kMatchingLegCap, 99);
        auto b = verify_hgp({2, 1}, corr2(Rational(1, 4)), kMatchingLegCap, 99);
        REQUIRE(to_json(a).dump() == to_json(b).dump());
        REQUIRE(csv_row(a) == csv_row(b));
    }
    SECTION("campaign reports are sorted by digest") {
        auto summary = run_campaign(10, true, [](size_t i) {
            SplitMix64 g = substream(39, i);
            return std::vector<VerificationReport>{
                verify_hgp({1, 1}, fixtures::random_gram_correlation(2, g), kMatchingLegCap, 39)};
        });
        for (size_t i = 1; i < summary.reports.size(); ++i)
            REQUIRE(summary.reports[i - 1].inputs_digest <= summary.reports[i].inputs_digest);
    }
}
