#include "wanet/validate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wanet/exterior.hpp"

namespace wanet {

std::vector<BoundsValidationRow> validate_bounds_rows(const NetworkParams& base,
                                                      const std::vector<double>& alphas,
                                                      std::uint64_t geometries_per_alpha,
                                                      std::uint64_t mc_draws, std::uint64_t seed,
                                                      bool corrupt_closed_form) {
    std::vector<BoundsValidationRow> rows;
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        for (std::uint64_t g = 0; g < geometries_per_alpha; ++g) {
            RandomStream rng = make_stream(seed, StreamDomain::oracle, ai, g);
            NetworkParams params = base;
            params.alpha = alphas[ai];
            params.p_tx = rng.uniform(0.05, 0.5);
            params = NetworkParams::with_n_bar_a(params, rng.uniform(5.0, 50.0));
            const double r_z = bounds::threshold_radius(params);
            const double d = params.r_a * rng.uniform(0.05, 1.0);
            const CandidateGeometry geom{d, params.r_a, r_z};

            BoundsValidationRow row;
            row.alpha = params.alpha;
            row.p_tx = params.p_tx;
            row.d = d;
            row.r_a = params.r_a;
            row.r_z = r_z;
            row.theta_s = bounds::theta_s(geom);
            const double j21 = bounds::jbar21(geom, params);
            row.quadrature = j21 + bounds::jbar22_quadrature(geom, params);
            if (params.alpha == 3.0) {
                row.closed = j21 + bounds::jbar22_closed_alpha3(geom, params);
                row.printed = row.closed;
            } else if (params.alpha == 4.0) {
                row.closed = j21 + bounds::jbar22_closed_alpha4(geom, params);
                row.printed = j21 + bounds::jbar22_closed_alpha4_printed(geom, params);
            } else {
                row.closed = row.quadrature;
                row.printed = row.quadrature;
            }
            if (corrupt_closed_form) row.closed *= 1.0 + 1e-4;

            if (row.theta_s > 0.0) {
                row.b_t_lens = bounds::b_t_area(geom);
                row.b_t_printed = bounds::b_t_area_printed(geom);
            } else {
                row.b_t_lens = std::numeric_limits<double>::quiet_NaN();
                row.b_t_printed = std::numeric_limits<double>::quiet_NaN();
            }

            if (mc_draws > 0) {
                // MC oracle: active exterior field outside the routing zone with
                // the candidate's threshold zone held empty.
                const double r_trunc = auto_r_trunc(params, true);
                const ExteriorField field(params.lambda * params.p_tx, params.rho, params.alpha,
                                          params.r_a, r_trunc, true, d, 2);
                const Point2 cand{d, 0.0};
                double sum = 0.0, sum2 = 0.0;
                for (std::uint64_t k = 0; k < mc_draws; ++k) {
                    double j = 0.0;
                    field.add_sample({&cand, 1}, {&j, 1}, rng, &cand, r_z);
                    sum += j;
                    sum2 += j * j;
                }
                const double inv = 1.0 / static_cast<double>(mc_draws);
                row.mc = sum * inv;
                const double var = std::max(0.0, sum2 * inv - row.mc * row.mc);
                row.mc_se = std::sqrt(var * inv);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace wanet
