#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vss/errors.hpp"
#include "vss/specfun.hpp"

#include <cmath>
#include <numbers>

using namespace vss;

TEST_CASE("gamma_fn matches known values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    // Frozen from the quadrature oracle: Gamma(1.3).
    CHECK(gamma_fn(1.3) == doctest::Approx(0.8974706963062772).epsilon(1e-13));
}

TEST_CASE("gamma_fn agrees with the quadrature oracle") {
    for (double x : {0.2, 0.55, 0.8, 1.3, 1.9, 2.4, 3.7}) {
        double ref = oracle::gamma_quadrature(x);
        CHECK(std::abs(gamma_fn(x) - ref) <= 1e-13 * std::abs(ref));
    }
}

TEST_CASE("gamma_fn recurrence Gamma(x+1) = x Gamma(x)") {
    for (int i = 0; i <= 40; ++i) {
        double x = 0.5 + 2.0 * i / 40.0;
        double lhs = gamma_fn(x + 1.0);
        double rhs = x * gamma_fn(x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("gamma_fn rejects bad input") {
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
    CHECK_THROWS_AS(gamma_fn(std::nan("")), DomainError);
}

TEST_CASE("hyp2f1_special trivial values") {
    CHECK(hyp2f1_special(0.8, 0.0) == doctest::Approx(1.0));
    CHECK(hyp2f1_special(1.0, 0.3) == doctest::Approx(1.0));
    CHECK(hyp2f1_special(1.0, 0.99) == doctest::Approx(1.0));
}

TEST_CASE("hyp2f1_special matches the series oracle") {
    CHECK(std::abs(hyp2f1_special(0.8, 0.5) - oracle::hyp2f1_series(0.8, 0.5)) <=
          1e-12 * oracle::hyp2f1_series(0.8, 0.5));
    for (double alpha : {0.6, 0.75, 0.9, 1.05, 1.2, 1.4}) {
        for (double x : {0.1, 0.45, 0.89, 0.91, 0.95, 0.99, 0.999}) {
            double ref = oracle::hyp2f1_series(alpha, x);
            double got = hyp2f1_special(alpha, x);
            CHECK(std::abs(got - ref) <= 1e-12 * std::abs(ref));
        }
    }
}

TEST_CASE("hyp2f1_special near-degenerate parameter strips") {
    for (double alpha : {0.52, 0.54, 0.97, 0.99, 1.01, 1.03, 1.45}) {
        for (double x : {0.93, 0.97, 0.995}) {
            double ref = oracle::hyp2f1_series(alpha, x);
            double got = hyp2f1_special(alpha, x);
            CHECK(std::abs(got - ref) <= 1e-12 * std::abs(ref));
        }
    }
}

TEST_CASE("hyp2f1_special endpoint equals the Gauss value") {
    for (double alpha : {0.55, 0.7, 0.8, 1.0, 1.2, 1.45}) {
        double expected = alpha == 1.0
                              ? 1.0
                              : gamma_fn(1.0 + alpha) * gamma_fn(2.0 * alpha - 1.0) /
                                    (gamma_fn(2.0 * alpha) * gamma_fn(alpha));
        CHECK(hyp2f1_special(alpha, 1.0) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("hyp2f1_special monotone in x for alpha <= 1") {
    for (double alpha : {0.55, 0.8, 1.0}) {
        double prev = hyp2f1_special(alpha, 0.0);
        for (int i = 1; i <= 50; ++i) {
            double x = i / 50.0;
            double cur = hyp2f1_special(alpha, x);
            CHECK(cur >= prev - 1e-14);
            prev = cur;
        }
    }
}

TEST_CASE("hyp2f1_special rejects bad input") {
    CHECK_THROWS_AS(hyp2f1_special(0.8, 1.0001), DomainError);
    CHECK_THROWS_AS(hyp2f1_special(0.8, -0.1), DomainError);
    CHECK_THROWS_AS(hyp2f1_special(0.5, 0.5), DomainError);
    CHECK_THROWS_AS(hyp2f1_special(1.5, 0.5), DomainError);
}

TEST_CASE("gauss_laguerre small degrees are exact") {
    QuadratureRule r1 = gauss_laguerre(1);
    REQUIRE(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r1.weights[0] == doctest::Approx(1.0).epsilon(1e-13));

    QuadratureRule r2 = gauss_laguerre(2);
    REQUIRE(r2.nodes.size() == 2);
    double s2 = std::numbers::sqrt2;
    CHECK(r2.nodes[0] == doctest::Approx(2.0 - s2).epsilon(1e-13));
    CHECK(r2.nodes[1] == doctest::Approx(2.0 + s2).epsilon(1e-13));
    CHECK(r2.weights[0] == doctest::Approx((2.0 + s2) / 4.0).epsilon(1e-13));
    CHECK(r2.weights[1] == doctest::Approx((2.0 - s2) / 4.0).epsilon(1e-13));
}

TEST_CASE("gauss_laguerre invariants: ordering, positivity, unit mass") {
    for (int degree : {1, 2, 5, 30, 80, 128}) {
        QuadratureRule r = gauss_laguerre(degree);
        REQUIRE(static_cast<int>(r.nodes.size()) == degree);
        double mass = 0.0;
        for (int j = 0; j < degree; ++j) {
            CHECK(r.nodes[j] > 0.0);
            if (j > 0) CHECK(r.nodes[j] > r.nodes[j - 1]);
            CHECK(r.weights[j] > 0.0);
            CHECK(r.log_weights[j] == doctest::Approx(std::log(r.weights[j])).epsilon(1e-12));
            mass += r.weights[j];
        }
        CHECK(std::abs(mass - 1.0) <= 1e-12);
    }
}

TEST_CASE("gauss_laguerre exactness on monomials up to 2m-1") {
    for (int degree : {1, 2, 5, 10, 30}) {
        QuadratureRule r = gauss_laguerre(degree);
        double factorial = 1.0;
        for (int p = 0; p <= 2 * degree - 1; ++p) {
            if (p > 0) factorial *= p;
            double sum = 0.0;
            for (int j = 0; j < degree; ++j) sum += r.weights[j] * std::pow(r.nodes[j], p);
            CHECK(std::abs(sum - factorial) <= 1e-10 * factorial);
        }
    }
}

TEST_CASE("gauss_laguerre exactness at degree 80 in log space") {
    QuadratureRule r = gauss_laguerre(80);
    for (int p = 1; p <= 159; p += 2) {
        // log-sum-exp of log(w_j) + p log(x_j) against lgamma(p+1)
        double max_term = -1e300;
        std::vector<double> terms(r.nodes.size());
        for (std::size_t j = 0; j < r.nodes.size(); ++j) {
            terms[j] = r.log_weights[j] + p * std::log(r.nodes[j]);
            max_term = std::max(max_term, terms[j]);
        }
        double acc = 0.0;
        for (double t : terms) acc += std::exp(t - max_term);
        double log_sum = max_term + std::log(acc);
        double log_ref = std::lgamma(p + 1.0);
        CHECK(std::abs(std::expm1(log_sum - log_ref)) <= 1e-10);
    }
}

TEST_CASE("gauss_laguerre rejects bad degrees") {
    CHECK_THROWS_AS(gauss_laguerre(0), ConfigError);
    CHECK_THROWS_AS(gauss_laguerre(257), ConfigError);
}

TEST_CASE("normal quantile inverts the CDF") {
    CHECK(norm_inv_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(norm_inv_cdf(0.5) == doctest::Approx(0.0));
    for (double p : {1e-10, 1e-4, 0.2, 0.5, 0.9, 1.0 - 1e-12}) {
        CHECK(norm_cdf(norm_inv_cdf(p)) == doctest::Approx(p).epsilon(1e-11));
    }
    CHECK_THROWS_AS(norm_inv_cdf(0.0), DomainError);
    CHECK_THROWS_AS(norm_inv_cdf(1.0), DomainError);
}
