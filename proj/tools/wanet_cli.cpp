#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wanet/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct SubArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::string> out;
    bool corrupt = false;
};

void add_common(CLI::App* sub, SubArgs& args, bool with_corrupt = false) {
    sub->add_option("--config", args.config_path, "experiment config file")->required();
    auto* seed = sub->add_option("--seed", "override the config seed");
    seed->each([&args](const std::string& v) { args.seed = std::stoull(v); });
    auto* workers = sub->add_option("--workers", "override the worker count");
    workers->each([&args](const std::string& v) { args.workers = static_cast<unsigned>(std::stoul(v)); });
    auto* out = sub->add_option("--out", "override the output path");
    out->each([&args](const std::string& v) { args.out = v; });
    if (with_corrupt)
        sub->add_flag("--corrupt-closed-form", args.corrupt,
                      "test hook: perturb the closed form to exercise the failure path")
            ->group("");  // hidden
}

int run_kind(wanet::ExperimentKind kind, const SubArgs& args) {
    wanet::ExperimentConfig config = wanet::parse_config(read_file(args.config_path));
    if (config.kind != kind) {
        std::cerr << "config kind is '" << wanet::kind_name(config.kind)
                  << "' but the subcommand expects '" << wanet::kind_name(kind) << "'\n";
        return 2;
    }
    wanet::RunOverrides overrides;
    overrides.seed = args.seed;
    overrides.workers = args.workers;
    overrides.out = args.out;
    overrides.corrupt_closed_form = args.corrupt;
    return wanet::run_experiment(std::move(config), overrides, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relay-selection experiments for random wireless ad-hoc networks"};
    app.require_subcommand(0, 1);

    int paper_figure = 0;
    std::string figure_out;
    app.add_option("--paper-figure", paper_figure,
                   "emit the preset config for a published experiment (3, 4, 5 or 6)");
    app.add_option("--out", figure_out, "write the preset config here instead of stdout");

    SubArgs sweep_args, netsim_args, qtable_args, validate_args, tune_args;
    add_common(app.add_subcommand("adorp-sweep", "single-slot rate-progress sweeps"), sweep_args);
    add_common(app.add_subcommand("netsim", "full multihop network simulation"), netsim_args);
    add_common(app.add_subcommand("build-qtable", "tabulate the narrow-knowledge rate function"),
               qtable_args);
    add_common(app.add_subcommand("validate-bounds",
                                  "closed form vs quadrature vs MC interference oracle"),
               validate_args, true);
    add_common(app.add_subcommand("tune-threshold", "grid-search the threshold scheme"),
               tune_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.get_subcommands().empty()) {
            if (paper_figure == 0) {
                std::cerr << app.help();
                return 2;
            }
            const auto config = wanet::paper_figure_config(paper_figure);
            const std::string text = wanet::render_config(config);
            if (figure_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(figure_out, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + figure_out);
                out << text;
                std::cout << "wrote preset config for figure " << paper_figure << " to "
                          << figure_out << "\n";
            }
            return 0;
        }
        const CLI::App* sub = app.get_subcommands().front();
        if (sub->get_name() == "adorp-sweep")
            return run_kind(wanet::ExperimentKind::adorp_sweep, sweep_args);
        if (sub->get_name() == "netsim") return run_kind(wanet::ExperimentKind::netsim, netsim_args);
        if (sub->get_name() == "build-qtable")
            return run_kind(wanet::ExperimentKind::build_qtable, qtable_args);
        if (sub->get_name() == "validate-bounds")
            return run_kind(wanet::ExperimentKind::validate_bounds, validate_args);
        if (sub->get_name() == "tune-threshold")
            return run_kind(wanet::ExperimentKind::tune_threshold, tune_args);
        return 2;
    } catch (const wanet::ConfigError& err) {
        std::cerr << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
