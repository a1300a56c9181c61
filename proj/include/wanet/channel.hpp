#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

#include "wanet/rng.hpp"

namespace wanet {

// Unit-mean exponential power gain |h|^2 of a Rayleigh channel.
inline double sample_fading(RandomStream& rng) { return rng.exponential(); }

// r^{-alpha} with the fast paths the hot loops rely on.
inline double pathloss(double r2, double alpha) {
    if (alpha == 4.0) {
        const double inv = 1.0 / r2;
        return inv * inv;
    }
    if (alpha == 3.0) return 1.0 / (r2 * std::sqrt(r2));
    return std::pow(r2, -0.5 * alpha);
}

// S = rho * r^{-alpha} * w. Zero distance is a contract violation, not a clamp.
inline double signal_power(double rho, double r, double alpha, double w) {
    if (!(r > 0.0)) throw std::invalid_argument("signal_power: r must be > 0");
    return rho * pathloss(r * r, alpha) * w;
}

// Sum of rho * r^{-alpha} * w over interferers (the serving node excluded by
// the caller).
inline double aggregate_interference(std::span<const std::pair<double, double>> interferers,
                                     double rho, double alpha) {
    double total = 0.0;
    for (const auto& [r, w] : interferers) {
        if (!(r > 0.0)) throw std::invalid_argument("aggregate_interference: r must be > 0");
        total += pathloss(r * r, alpha) * w;
    }
    return rho * total;
}

struct LinkBudget {
    double s = 0.0;
    double j = 0.0;
    double sigma_v2 = 0.0;
};

inline double sinr(const LinkBudget& budget) {
    const double denom = budget.j + budget.sigma_v2;
    if (!(denom > 0.0)) throw std::domain_error("sinr: zero interference-plus-noise");
    if (budget.s < 0.0) throw std::invalid_argument("sinr: negative signal power");
    return budget.s / denom;
}

// Per-slot rate B * log2(1 + SINR).
inline double rate(double bandwidth, double sinr_value) {
    if (!(sinr_value >= 0.0)) throw std::invalid_argument("rate: SINR must be >= 0");
    return bandwidth * std::log2(1.0 + sinr_value);
}

}  // namespace wanet
