#pragma once

#include <span>
#include <vector>

#include "wanet/geometry.hpp"

namespace wanet {

// Shot-noise field of unknown transmitters: points of a PPP with the given
// density on the annulus (r_inner, r_trunc] around the origin, plus the
// analytic mean of the field beyond r_trunc (so truncation only drops the
// far tail's variance, not its mean). The tail mean depends on the receiver's
// offset c from the annulus center; it is tabulated once per configuration.
class ExteriorField {
public:
    ExteriorField(double density, double rho, double alpha, double r_inner, double r_trunc,
                  bool tail_compensation, double receiver_c_max,
                  std::size_t tail_table_points = 65);

    // Draws one field realization and adds its interference (tail included)
    // at every receiver. Points inside the exclusion disk are skipped, which
    // samples the field conditioned on that disk being empty.
    void add_sample(std::span<const Point2> receivers, std::span<double> j_accum,
                    RandomStream& rng, const Point2* exclude_center = nullptr,
                    double exclude_radius = 0.0) const;

    // Mean interference at offset c from the disk beyond r_trunc.
    double tail_mean(double c) const;

    double density() const { return density_; }
    double r_inner() const { return r_inner_; }
    double r_trunc() const { return r_trunc_; }

    // Exact tail mean (unit density and power) at receiver offset c from the
    // complement of the disk of radius r. Closed form for alpha=4, nested
    // adaptive quadrature otherwise.
    static double tail_mean_exact(double c, double r, double alpha);

private:
    double density_;
    double rho_;
    double alpha_;
    double r_inner_;
    double r_trunc_;
    bool tail_comp_;
    double mean_count_;
    std::vector<double> tail_c_;
    std::vector<double> tail_v_;
};

// Default truncation radius. With tail compensation a short radius suffices
// (the tail mean is exact; only its variance is dropped). Without it, the
// radius solves tail/reference < budget with the interference beyond r_Z as
// the reference, i.e. (r_Z/R)^(alpha-2) < budget.
double auto_r_trunc(const NetworkParams& params, bool tail_compensation,
                    double budget = 1e-4);

}  // namespace wanet
