#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "wanet/channel.hpp"

using namespace wanet;

TEST_CASE("signal power formula and the zero-distance contract") {
    CHECK(signal_power(1.0, 1.0, 4.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(signal_power(1.0, 2.0, 4.0, 1.0) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(signal_power(2.0, 1.0, 3.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(signal_power(1.0, 0.0, 4.0, 1.0), std::invalid_argument);
}

TEST_CASE("signal power round-trips the transmit power") {
    RandomStream rng(21, 0);
    for (int i = 0; i < 200; ++i) {
        const double rho = rng.uniform(0.1, 10.0);
        const double r = rng.uniform(0.05, 20.0);
        const double alpha = rng.uniform(2.1, 6.0);
        const double w = rng.exponential();
        const double s = signal_power(rho, r, alpha, w);
        CHECK(s * std::pow(r, alpha) / w == doctest::Approx(rho).epsilon(1e-12));
    }
}

TEST_CASE("aggregate interference sums and is additive") {
    const std::vector<std::pair<double, double>> none;
    CHECK(aggregate_interference(none, 1.0, 4.0) == 0.0);

    const std::vector<std::pair<double, double>> two = {{1.0, 1.0}, {2.0, 1.0}};
    CHECK(aggregate_interference(two, 1.0, 4.0) == doctest::Approx(1.0625).epsilon(1e-15));

    const std::vector<std::pair<double, double>> one = {{1.7, 0.9}};
    CHECK(aggregate_interference(one, 2.0, 3.5) ==
          doctest::Approx(signal_power(2.0, 1.7, 3.5, 0.9)).epsilon(1e-15));

    RandomStream rng(22, 0);
    std::vector<std::pair<double, double>> a, b, both;
    for (int i = 0; i < 50; ++i) {
        const std::pair<double, double> t{rng.uniform(0.1, 5.0), rng.exponential()};
        if (i % 2 == 0) a.push_back(t); else b.push_back(t);
        both.push_back(t);
    }
    const double ja = aggregate_interference(a, 1.3, 3.7);
    const double jb = aggregate_interference(b, 1.3, 3.7);
    const double jab = aggregate_interference(both, 1.3, 3.7);
    CHECK(jab == doctest::Approx(ja + jb).epsilon(1e-12));

    const std::vector<std::pair<double, double>> bad = {{0.0, 1.0}};
    CHECK_THROWS_AS(aggregate_interference(bad, 1.0, 4.0), std::invalid_argument);
}

TEST_CASE("sinr and rate") {
    CHECK(sinr({1.0, 0.0, 1.0}) == doctest::Approx(1.0));
    CHECK(sinr({3.0, 1.0, 0.0}) == doctest::Approx(3.0));
    CHECK(sinr({0.0, 2.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(sinr({1.0, 0.0, 0.0}), std::domain_error);

    CHECK(rate(1.0, 0.0) == 0.0);
    CHECK(rate(1.0, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(rate(2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(rate(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("rate increases in sinr, sinr decreases in interference") {
    double prev = -1.0;
    for (double s = 0.0; s < 50.0; s += 0.5) {
        const double r = rate(1.0, s);
        CHECK(r > prev);
        prev = r;
    }
    double prev_sinr = 1e9;
    for (double j = 0.1; j < 10.0; j += 0.1) {
        const double v = sinr({1.0, j, 0.5});
        CHECK(v < prev_sinr);
        prev_sinr = v;
    }
}

TEST_CASE("fading draws are exponential with unit mean") {
    RandomStream rng(23, 0);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = sample_fading(rng);
        CHECK(w > 0.0);
        sum += w;
    }
    CHECK(std::abs(sum / n - 1.0) < 4.0 / std::sqrt(static_cast<double>(n)));
}
