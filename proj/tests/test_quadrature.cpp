#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wanet/quadrature.hpp"

using namespace wanet;

TEST_CASE("polynomials and smooth functions to tight tolerance") {
    const auto q1 = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(q1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    const auto q2 = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(q2.value == doctest::Approx(2.0).epsilon(1e-12));

    const auto q3 = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(q3.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("oscillatory integrand converges by panel splitting") {
    const auto q =
        integrate_adaptive([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0, 1e-12, 1e-12);
    CHECK(q.value == doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-10));
    CHECK(q.panels > 1);
}

TEST_CASE("steep but integrable endpoint behaviour") {
    // 1/sqrt(x) on (0,1]: integrable, needs many panels near the endpoint.
    const auto q = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0,
                                      1e-9, 1e-9, 2000);
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("non-convergence raises a diagnostic error") {
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / x; }, 1e-300, 1.0, 1e-12,
                                       1e-12, 50),
                    QuadratureError);
}
