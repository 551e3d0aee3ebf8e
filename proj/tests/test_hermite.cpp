#include <catch2/catch_amalgamated.hpp>

#include "chaoskit/hermite.hpp"

using namespace chaoskit;

namespace {

// Monomial-basis product of two Hermite polynomials; the independent route
// the linearization closed form is checked against.
std::vector<Rational> poly_product(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

TEST_CASE("hermite_coeffs base cases") {
    auto h0 = hermite_coeffs(0);
    REQUIRE(h0.degree == 0);
    REQUIRE(h0.coeffs == std::vector<Rational>{Rational(1)});

    auto h2 = hermite_coeffs(2);
    REQUIRE(h2.coeffs == std::vector<Rational>{Rational(-1), Rational(0), Rational(1)});

    auto h3 = hermite_coeffs(3);
    REQUIRE(h3.coeffs == std::vector<Rational>{Rational(0), Rational(-3), Rational(0), Rational(1)});
}

TEST_CASE("hermite polynomial structural invariants") {
    for (int k = 0; k <= 12; ++k) {
        auto h = hermite_coeffs(k);
        REQUIRE(h.degree == k);
        REQUIRE(h.coeffs.size() == static_cast<size_t>(k) + 1);
        REQUIRE(h.coeffs.back() == 1);  // monic
        for (int j = 0; j <= k; ++j) {
            if ((k - j) % 2 != 0) REQUIRE(h.coeffs[static_cast<size_t>(j)] == 0);  // parity
        }
    }
}

TEST_CASE("hermite_eval examples and agreement with coefficients") {
    REQUIRE(hermite_eval(1, Rational(5)) == 5);
    REQUIRE(hermite_eval(2, Rational(1)) == 0);
    REQUIRE(hermite_eval(4, Rational(0)) == 3);

    // Recursion route == direct evaluation of the coefficient vector.
    for (int k = 0; k <= 12; ++k) {
        auto h = hermite_coeffs(k);
        for (int num = -6; num <= 6; ++num) {
            Rational x(num, 3);
            REQUIRE(hermite_eval(k, x) == h.eval(x));
        }
    }
}

TEST_CASE("linearize closed form") {
    auto r0k = linearize(0, 5);
    REQUIRE(r0k.size() == 1);
    REQUIRE(r0k.at(5) == 1);

    auto r11 = linearize(1, 1);
    REQUIRE(r11 == std::map<int, Rational>{{0, Rational(1)}, {2, Rational(1)}});

    auto r22 = linearize(2, 2);
    REQUIRE(r22 == std::map<int, Rational>{{0, Rational(2)}, {2, Rational(4)}, {4, Rational(1)}});
}

TEST_CASE("linearization reproduces the monomial product for all a,b <= 8") {
    for (int a = 0; a <= 8; ++a) {
        for (int b = 0; b <= 8; ++b) {
            auto direct = poly_product(hermite_coeffs(a).coeffs, hermite_coeffs(b).coeffs);
            std::vector<Rational> recombined(static_cast<size_t>(a + b) + 1, Rational(0));
            for (const auto& [deg, c] : linearize(a, b)) {
                auto h = hermite_coeffs(deg);
                for (size_t j = 0; j < h.coeffs.size(); ++j) recombined[j] += c * h.coeffs[j];
            }
            REQUIRE(direct == recombined);
        }
    }
}

TEST_CASE("chi2_moment values and recurrence") {
    REQUIRE(chi2_moment(7, 0) == 1);
    REQUIRE(chi2_moment(2, 1) == 2);
    REQUIRE(chi2_moment(1, 2) == 3);

    for (int n = 1; n <= 10; ++n)
        for (int q = 1; q <= 10; ++q)
            REQUIRE(chi2_moment(n, q) == Rational(n + 2 * q - 2) * chi2_moment(n, q - 1));

    // chi^2(1) moments are the standard Gaussian even moments (2q-1)!!.
    for (int q = 0; q <= 10; ++q)
        REQUIRE(chi2_moment(1, q) == Rational(double_factorial(2 * q - 1)));

    REQUIRE_THROWS_AS(chi2_moment(0, 1), InputError);
    REQUIRE_THROWS_AS(chi2_moment(2, -1), InputError);
}

TEST_CASE("double_factorial") {
    REQUIRE(double_factorial(-1) == 1);
    REQUIRE(double_factorial(1) == 1);
    REQUIRE(double_factorial(3) == 3);
    REQUIRE(double_factorial(7) == 105);
    REQUIRE_THROWS_AS(double_factorial(4), InputError);
    REQUIRE_THROWS_AS(double_factorial(-3), InputError);
}

TEST_CASE("rational plumbing") {
    REQUIRE(parse_rational("3/6") == Rational(1, 2));
    REQUIRE(parse_rational("-4/2") == Rational(-2));
    REQUIRE(to_fraction_string(Rational(27, 2)) == "27/2");
    REQUIRE(to_fraction_string(Rational(0)) == "0/1");
    REQUIRE(to_plain_string(Rational(27, 2)) == "27/2");
    REQUIRE(to_plain_string(Rational(5)) == "5");
    REQUIRE_THROWS_AS(parse_rational("1/0"), InputError);
    REQUIRE_THROWS_AS(parse_rational("abc"), InputError);
    REQUIRE(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
    REQUIRE(denominator(parse_rational("4/6")) == 3);
}
