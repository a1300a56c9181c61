#pragma once

#include <cstdint>
#include <vector>

#include "wanet/bounds.hpp"

namespace wanet {

struct BoundsValidationRow {
    double alpha = 0.0;
    double p_tx = 0.0;
    double d = 0.0;
    double r_a = 0.0;
    double r_z = 0.0;
    double theta_s = 0.0;
    double closed = 0.0;      // J21 + corrected closed-form J22
    double quadrature = 0.0;  // J21 + adaptive quadrature of J22
    double printed = 0.0;     // J21 + literal printed alpha=4 form (alpha=3: = closed)
    double mc = 0.0;          // MC interference mean outside both zones
    double mc_se = 0.0;
    double b_t_lens = 0.0;     // overlap rows only, else NaN
    double b_t_printed = 0.0;  // literal printed area form
};

// Random geometries spanning interior and overlap cases: p_tx in (0.05,0.5),
// n_bar_a in (5,50), d in (0.05,1)*r_a, lambda/rho from the base params.
std::vector<BoundsValidationRow> validate_bounds_rows(const NetworkParams& base,
                                                      const std::vector<double>& alphas,
                                                      std::uint64_t geometries_per_alpha,
                                                      std::uint64_t mc_draws, std::uint64_t seed,
                                                      bool corrupt_closed_form = false);

}  // namespace wanet
