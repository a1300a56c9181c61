#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wanet/geometry.hpp"

using namespace wanet;

namespace {

NetworkParams paper_point() {
    NetworkParams p;
    p.lambda = 1.0;
    p.p_tx = 0.15;
    p.alpha = 4.0;
    p.rho = 1.0;
    p.sigma_v2 = 0.0;
    return NetworkParams::with_n_bar_a(p, 30.0);
}

}  // namespace

TEST_CASE("params validation rejects out-of-range constants") {
    NetworkParams p = paper_point();
    CHECK_NOTHROW(p.validate());
    p.p_tx = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = paper_point();
    p.alpha = 2.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = paper_point();
    p.lambda = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("mean nodes in zone") {
    NetworkParams p = paper_point();
    CHECK(mean_nodes_in_zone(p) == doctest::Approx(30.0).epsilon(1e-12));
    p.r_a = 0.0;
    CHECK(mean_nodes_in_zone(p) == 0.0);
    p.lambda = 2.0;
    p.r_a = 1.0;
    CHECK(mean_nodes_in_zone(p) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("ppp sampling: zero density and count statistics") {
    RandomStream rng = make_stream(11, StreamDomain::oracle, 0);
    CHECK(sample_ppp_annulus(0.0, 0.0, 5.0, rng).empty());

    // disk of area 300 at unit density: mean count 300
    const double r300 = std::sqrt(300.0 / std::numbers::pi);
    double sum = 0.0;
    const int draws = 2000;
    for (int i = 0; i < draws; ++i)
        sum += static_cast<double>(sample_ppp_annulus(1.0, 0.0, r300, rng).size());
    CHECK(std::abs(sum / draws - 300.0) < 4.0 * std::sqrt(300.0 / draws));

    // disk of area 30, 1e4 draws, mean within 3 sigma and variance within 4 SE
    const double r30 = std::sqrt(30.0 / std::numbers::pi);
    const int n = 10000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = static_cast<double>(sample_ppp_annulus(1.0, 0.0, r30, rng).size());
        s1 += k;
        s2 += k * k;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 30.0) < 3.0 * std::sqrt(30.0 / n));
    CHECK(std::abs(var - 30.0) < 4.0 * std::sqrt((2.0 * 30.0 * 30.0 + 30.0) / n));
}

TEST_CASE("ppp points are uniform: radial KS test at the 1% level") {
    RandomStream rng = make_stream(12, StreamDomain::oracle, 0);
    const double radius = 2.0;
    std::vector<double> u;  // (r/R)^2 should be U(0,1)
    while (u.size() < 10000) {
        for (const Point2& p : sample_ppp_annulus(1.0, 0.0, radius, rng))
            u.push_back(norm2(p) / (radius * radius));
    }
    u.resize(10000);
    std::sort(u.begin(), u.end());
    double ks = 0.0;
    const double n = static_cast<double>(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double hi = (static_cast<double>(i) + 1.0) / n - u[i];
        const double lo = u[i] - static_cast<double>(i) / n;
        ks = std::max({ks, hi, lo});
    }
    CHECK(ks < 1.628 / std::sqrt(n));  // 1% critical value
}

TEST_CASE("ppp annulus respects bounds") {
    RandomStream rng = make_stream(13, StreamDomain::oracle, 0);
    const auto pts = sample_ppp_annulus(2.0, 1.0, 3.0, rng);
    CHECK(!pts.empty());
    for (const Point2& p : pts) {
        const double r = norm(p);
        CHECK(r >= 1.0);
        CHECK(r <= 3.0);
    }
    CHECK_THROWS_AS(sample_ppp_annulus(-1.0, 0.0, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_ppp_annulus(1.0, 2.0, 1.0, rng), std::invalid_argument);
}

TEST_CASE("probe realization: neighbor and background statistics") {
    NetworkParams p = paper_point();
    RandomStream rng = make_stream(14, StreamDomain::oracle, 0);

    double nb_sum = 0.0;
    const int draws = 2000;
    for (int i = 0; i < draws; ++i) {
        const ProbeRealization real = sample_probe_realization(p, 2.0 * p.r_a, rng);
        nb_sum += static_cast<double>(real.neighbors.size());
        for (const NodeSample& node : real.neighbors) {
            CHECK(norm(node.pos) <= p.r_a);
            CHECK(node.w > 0.0);
        }
        for (const NodeSample& node : real.background) {
            CHECK(norm(node.pos) > p.r_a);
            CHECK(norm(node.pos) <= 2.0 * p.r_a);
            CHECK(node.w > 0.0);
        }
    }
    CHECK(std::abs(nb_sum / draws - 30.0) < 4.0 * std::sqrt(30.0 / draws));

    // zero-width background annulus
    const ProbeRealization tight = sample_probe_realization(p, p.r_a, rng);
    CHECK(tight.background.empty());

    // background mean count pi*(100-1) for r_a=1, r_trunc=10 over 1e3 draws
    NetworkParams q = p;
    q.r_a = 1.0;
    double bg_sum = 0.0;
    const int bg_draws = 1000;
    for (int i = 0; i < bg_draws; ++i)
        bg_sum += static_cast<double>(sample_probe_realization(q, 10.0, rng).background.size());
    const double bg_mean = std::numbers::pi * 99.0;
    CHECK(std::abs(bg_sum / bg_draws - bg_mean) < 3.0 * std::sqrt(bg_mean / bg_draws));

    CHECK_THROWS_AS(sample_probe_realization(p, 0.5 * p.r_a, rng), std::invalid_argument);
}
