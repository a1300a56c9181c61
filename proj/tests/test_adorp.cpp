#include <doctest.h>

#include <cmath>
#include <vector>

#include "wanet/adorp.hpp"

using namespace wanet;

namespace {

NetworkParams paper_point(double alpha = 4.0, double p_tx = 0.15) {
    NetworkParams p;
    p.lambda = 1.0;
    p.p_tx = p_tx;
    p.alpha = alpha;
    p.rho = 1.0;
    p.sigma_v2 = 0.0;
    return NetworkParams::with_n_bar_a(p, 30.0);
}

McConfig quick_mc(std::uint64_t realizations = 1500, std::uint32_t so = 150) {
    McConfig mc;
    mc.realizations = realizations;
    mc.so_samples = so;
    mc.workers = 2;
    return mc;
}

}  // namespace

TEST_CASE("estimate equals the prefactor times the mean contribution") {
    const NetworkParams p = paper_point();
    const SchemeId schemes[] = {SchemeId::nbo, SchemeId::nn};
    const auto multi = estimate_adorp_multi(schemes, p, quick_mc(), 17, 0, true);
    REQUIRE(multi.contributions.size() == 2);
    const double prefactor = p.lambda * p.p_tx * (1.0 - p.p_tx);
    for (std::size_t s = 0; s < 2; ++s) {
        double sum = 0.0;
        for (const double v : multi.contributions[s]) sum += v;
        const double mean = sum / static_cast<double>(multi.contributions[s].size());
        CHECK(multi.estimates[s].value == doctest::Approx(prefactor * mean).epsilon(1e-12));
        CHECK(multi.estimates[s].value >= 0.0);
        CHECK(multi.estimates[s].stderr_ >= 0.0);
    }
}

TEST_CASE("worker count never changes the result") {
    const NetworkParams p = paper_point();
    const SchemeId schemes[] = {SchemeId::nbo, SchemeId::bo, SchemeId::nn};
    McConfig one = quick_mc(600);
    one.workers = 1;
    McConfig two = quick_mc(600);
    two.workers = 2;
    McConfig four = quick_mc(600);
    four.workers = 4;
    const auto a = estimate_adorp_multi(schemes, p, one, 99, 3, false);
    const auto b = estimate_adorp_multi(schemes, p, two, 99, 3, false);
    const auto c = estimate_adorp_multi(schemes, p, four, 99, 3, false);
    for (std::size_t s = 0; s < 3; ++s) {
        CHECK(a.estimates[s].value == b.estimates[s].value);
        CHECK(b.estimates[s].value == c.estimates[s].value);
        CHECK(a.estimates[s].stderr_ == b.estimates[s].stderr_);
    }
}

TEST_CASE("near-empty routing zones contribute zeros") {
    NetworkParams p = paper_point();
    p = NetworkParams::with_n_bar_a(p, 0.05);
    const SchemeId schemes[] = {SchemeId::nn};
    const auto multi = estimate_adorp_multi(schemes, p, quick_mc(800), 7, 0, true);
    std::size_t zeros = 0;
    for (const double v : multi.contributions[0])
        if (v == 0.0) ++zeros;
    // empty-zone probability e^-0.05 ~ 0.95
    CHECK(static_cast<double>(zeros) / 800.0 > 0.85);
    CHECK(multi.estimates[0].value >= 0.0);
}

TEST_CASE("upper bound curve") {
    const std::vector<double> grid = {0.0, 1.0, 10.0, 30.0};
    const auto ub = upper_bound_curve(0.5, grid);
    CHECK(ub[0] == 0.0);
    CHECK(ub[1] == doctest::Approx(0.5 * (1.0 - std::exp(-1.0))).epsilon(1e-12));
    CHECK(ub[3] == doctest::Approx(0.5).epsilon(1e-10));
    for (std::size_t i = 1; i < ub.size(); ++i) CHECK(ub[i] >= ub[i - 1]);
    CHECK_THROWS_AS(upper_bound_curve(-1.0, grid), std::invalid_argument);
}

TEST_CASE("threshold tuning: single point, degenerate zero, by-construction max") {
    const NetworkParams p = paper_point();
    McConfig mc = quick_mc(1200);

    const std::vector<double> single = {0.123};
    CHECK(tune_threshold(p, single, mc, 5).threshold == 0.123);

    const std::vector<double> zero = {0.0};
    CHECK(tune_threshold(p, zero, mc, 5).threshold == 0.0);

    const auto grid = default_threshold_grid(p);
    const auto tuned = tune_threshold(p, grid, mc, 5);
    double best = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t g = 0; g < tuned.estimates.size(); ++g) {
        if (tuned.estimates[g].value > best) {
            best = tuned.estimates[g].value;
            best_idx = g;
        }
    }
    CHECK(tuned.threshold == tuned.grid[best_idx]);
    for (const auto& est : tuned.estimates) {
        const double se = std::sqrt(est.stderr_ * est.stderr_ +
                                    tuned.estimates[best_idx].stderr_ *
                                        tuned.estimates[best_idx].stderr_);
        CHECK(best >= est.value - 2.0 * se);
    }
}

TEST_CASE("sweep over a single point reduces to the multi estimate") {
    const NetworkParams p = paper_point();
    const std::vector<SchemeId> schemes = {SchemeId::nbo, SchemeId::nn};
    const std::vector<double> grid = {0.2};
    McConfig mc = quick_mc(500);
    const auto swept = sweep(SweepAxis::p_tx, grid, schemes, p, mc, 21);
    REQUIRE(swept.points.size() == 1);
    NetworkParams at = apply_axis(p, SweepAxis::p_tx, 0.2);
    const auto direct = estimate_adorp_multi(schemes, at, mc, 21, 0, false);
    for (std::size_t s = 0; s < schemes.size(); ++s)
        CHECK(swept.points[0].estimates[s].value == direct.estimates[s].value);
}

TEST_CASE("sweep axes apply to the right parameter") {
    const NetworkParams p = paper_point();
    const NetworkParams at_p = apply_axis(p, SweepAxis::p_tx, 0.3);
    CHECK(at_p.p_tx == 0.3);
    const NetworkParams at_n = apply_axis(p, SweepAxis::n_bar_a, 10.0);
    CHECK(at_n.n_bar_a() == doctest::Approx(10.0).epsilon(1e-12));
    const NetworkParams at_snr = apply_axis(p, SweepAxis::snr, -20.0);
    CHECK(at_snr.sigma_v2 == doctest::Approx(p.rho * 100.0).epsilon(1e-12));
    CHECK_THROWS_AS(apply_axis(p, SweepAxis::p_tx, 1.5), std::invalid_argument);

    std::vector<double> bad = {0.2, 0.1};
    const std::vector<SchemeId> schemes = {SchemeId::nn};
    CHECK_THROWS_AS(sweep(SweepAxis::p_tx, bad, schemes, p, quick_mc(10), 1),
                    std::invalid_argument);
}

TEST_CASE("nso path needs a qtable and uses it") {
    const NetworkParams p = paper_point();
    const SchemeId schemes[] = {SchemeId::nso};
    CHECK_THROWS_AS(estimate_adorp_multi(schemes, p, quick_mc(10), 1, 0, false),
                    std::invalid_argument);
    // the wrapper builds one internally
    const auto est = estimate_adorp(SchemeId::nso, p, quick_mc(300), 11);
    CHECK(est.value > 0.0);
}
