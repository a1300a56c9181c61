#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wanet/schemes.hpp"

namespace wanet {

struct AdorpEstimate {
    SchemeId scheme = SchemeId::nbo;
    double value = 0.0;    // normalized ADORP (bandwidth = 1 internally)
    double stderr_ = 0.0;
    std::uint64_t realizations = 0;
    std::uint64_t seed = 0;
};

enum class SweepAxis { p_tx, n_bar_a, snr };

std::string_view axis_name(SweepAxis axis);
std::optional<SweepAxis> axis_from_name(std::string_view name);

// Applies one sweep abscissa to the template parameters. The snr axis is the
// receiver SNR at unit distance in dB: sigma_v2 = rho / 10^(dB/10).
NetworkParams apply_axis(const NetworkParams& tmpl, SweepAxis axis, double abscissa);

// All schemes evaluated against the same realizations (common random
// numbers); contributions are the per-realization r*rate terms before the
// lambda*p*(1-p) prefactor, kept when the caller wants paired comparisons.
struct MultiEstimate {
    std::vector<AdorpEstimate> estimates;
    std::vector<std::vector<double>> contributions;
    double threshold_used = 0.0;
};

MultiEstimate estimate_adorp_multi(std::span<const SchemeId> schemes,
                                   const NetworkParams& params, const McConfig& mc,
                                   std::uint64_t seed, std::uint64_t point_index,
                                   bool keep_contributions, const QTable* qtable = nullptr,
                                   double threshold = 0.0);

AdorpEstimate estimate_adorp(SchemeId scheme, const NetworkParams& params, const McConfig& mc,
                             std::uint64_t seed, std::uint64_t point_index = 0);

struct SweepPoint {
    double abscissa = 0.0;
    std::vector<AdorpEstimate> estimates;
    double threshold_used = 0.0;
    std::vector<std::vector<double>> contributions;  // kept only on request
};

struct SweepResult {
    SweepAxis axis = SweepAxis::p_tx;
    std::vector<SchemeId> schemes;
    std::vector<SweepPoint> points;
};

SweepResult sweep(SweepAxis axis, std::span<const double> grid,
                  std::span<const SchemeId> schemes, const NetworkParams& tmpl,
                  const McConfig& mc, std::uint64_t seed, bool keep_contributions = false);

// max SO ADORP times the non-empty-zone probability 1 - e^{-n_bar_a}.
std::vector<double> upper_bound_curve(double max_so_adorp, std::span<const double> n_bar_a_grid);

struct ThresholdTuneResult {
    double threshold = 0.0;
    std::vector<double> grid;
    std::vector<AdorpEstimate> estimates;  // one per grid value, CRN across the grid
};

ThresholdTuneResult tune_threshold(const NetworkParams& params, std::span<const double> grid,
                                   const McConfig& mc, std::uint64_t seed,
                                   std::uint64_t point_index = 0);

// Default tuning grid: log-spaced thresholds around the edge-of-zone power.
std::vector<double> default_threshold_grid(const NetworkParams& params);

}  // namespace wanet
