#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wanet/bounds.hpp"
#include "wanet/exterior.hpp"
#include "wanet/geometry.hpp"

namespace wanet {

enum class SchemeId { so, bo, nso, nbo, nn, threshold };

std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> scheme_from_name(std::string_view name);

struct CandidateEvaluation {
    std::size_t index = 0;
    double metric = 0.0;
    double r = 0.0;          // distance to the probe, used for tie-breaking
    double stderr_ = 0.0;    // only meaningful when has_stderr
    bool has_stderr = false;
    bool eligible = true;    // threshold scheme marks out-of-set candidates
    bool clamped = false;    // NSO lookup hit the table's edge
};

// Monte Carlo knobs shared by the estimators.
struct McConfig {
    std::uint64_t realizations = 20000;
    std::uint32_t so_samples = 400;
    double r_trunc = 0.0;  // 0 = auto
    bool tail_compensation = true;
    unsigned workers = 0;  // 0 = hardware concurrency
};

struct QTableConfig {
    double x_min_factor = 1e-4;  // grid spans [x_min,x_max] = factors * rho * r_a^-alpha
    double x_max_factor = 1e6;
    std::size_t points = 256;
    std::uint64_t samples = 100000;
};

// Tabulated q(x) = E{log2(1 + x/(J+sigma_v2))} on a log-spaced grid.
struct QTable {
    std::vector<double> x;
    std::vector<double> q;
    std::vector<double> se;
    std::string fingerprint;
    std::uint64_t mc_samples = 0;
    bool repaired = false;

    // Monotone piecewise-linear interpolation in log x; clamps outside the
    // grid and reports it.
    double lookup(double s, bool* clamped = nullptr) const;
};

std::string params_fingerprint(const NetworkParams& params);

QTable build_q_table(const NetworkParams& params, const QTableConfig& grid, const McConfig& mc,
                     RandomStream& rng);

// SO metric for one candidate: r * MC mean of log2(1+S/(J+sigma^2)) over
// unknown MAC states of the known neighbors and a fresh exterior per sample.
CandidateEvaluation metric_so(std::size_t candidate, const ProbeRealization& realization,
                              const NetworkParams& params, const McConfig& mc, RandomStream& rng);

// Same inner MC evaluated for all candidates in one pass; the per-sample MAC,
// fading and exterior draws are shared across candidates (common random
// numbers; every candidate's marginal law is unchanged).
std::vector<CandidateEvaluation> so_metrics_all(const ProbeRealization& realization,
                                                const NetworkParams& params,
                                                std::uint32_t samples,
                                                const ExteriorField& exterior,
                                                RandomStream& rng);

CandidateEvaluation metric_bo(std::size_t candidate, const LocalKnowledge& knowledge,
                              const NetworkParams& params);

CandidateEvaluation metric_nso(std::size_t candidate, const LocalKnowledge& knowledge,
                               const NetworkParams& params, const QTable& table);

// gamma_b may be passed in when the caller evaluates many candidates; any
// negative value recomputes it from params.
CandidateEvaluation metric_nbo(std::size_t candidate, const LocalKnowledge& knowledge,
                               const NetworkParams& params, double gamma_b = -1.0);

CandidateEvaluation metric_nn(std::size_t candidate, const LocalKnowledge& knowledge);

CandidateEvaluation metric_threshold(std::size_t candidate, const LocalKnowledge& knowledge,
                                     const NetworkParams& params, double threshold);

// Argmax over eligible candidates; exact ties go to the smaller distance,
// then the smaller index. Empty or fully ineligible input selects nothing.
std::optional<std::size_t> select_relay(std::span<const CandidateEvaluation> evaluations);

}  // namespace wanet
