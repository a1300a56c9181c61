#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wanet/adorp.hpp"
#include "wanet/netsim.hpp"

namespace wanet {

enum class ExperimentKind { adorp_sweep, netsim, build_qtable, validate_bounds, tune_threshold };

std::string_view kind_name(ExperimentKind kind);

struct SweepBlock {
    SweepAxis axis = SweepAxis::p_tx;
    std::vector<double> grid;
    std::vector<SchemeId> schemes;
};

struct NetsimBlock {
    double area = 1000.0;
    double n_nodes = 100.0;
    double mobility_sigma = 2.84;
    std::uint64_t slots = 100000;
    double gen_prob = 0.01;
    double k_bits = 20.0;
    std::vector<SchemeId> schemes = {SchemeId::nbo, SchemeId::nn};
    std::vector<double> p_grid;  // empty: use network.p_tx as the single point
    double threshold = 0.0;
    std::uint32_t so_samples = 100;
};

struct TuneBlock {
    std::vector<double> grid;  // empty: default grid from the network params
};

struct ValidateBlock {
    std::uint64_t geometries = 100;
    std::uint64_t mc_draws = 20000;
    std::vector<double> alphas = {3.0, 4.0};
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::adorp_sweep;
    std::uint64_t seed = 1;
    std::string out = "out.csv";
    unsigned workers = 0;
    NetworkParams network;
    McConfig mc;
    SweepBlock sweep;
    QTableConfig qtable;
    NetsimBlock netsim;
    TuneBlock tune;
    ValidateBlock validate;
};

struct ConfigIssue {
    int line = 0;
    std::string key;
    std::string reason;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string what, std::vector<ConfigIssue> issues_in)
        : std::runtime_error(std::move(what)), issues(std::move(issues_in)) {}
    std::vector<ConfigIssue> issues;
};

// Strict parse: unknown sections/keys, duplicate keys, type errors and
// constraint violations are all collected (with line numbers) and thrown.
ExperimentConfig parse_config(const std::string& text);

// Canonical text form; parse(render(c)) == c for any valid config.
std::string render_config(const ExperimentConfig& config);

// Preset configs matching the published experiment setups (desk scale).
ExperimentConfig paper_figure_config(int figure);

}  // namespace wanet
