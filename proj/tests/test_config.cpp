#include <doctest.h>

#include <algorithm>
#include <string>

#include "wanet/config.hpp"

using namespace wanet;

namespace {

bool has_issue(const ConfigError& err, const std::string& key, int line = -1) {
    return std::any_of(err.issues.begin(), err.issues.end(), [&](const ConfigIssue& i) {
        return i.key == key && (line < 0 || i.line == line);
    });
}

}  // namespace

TEST_CASE("minimal sweep config parses with defaults filled") {
    const std::string text =
        "kind = adorp-sweep\n"
        "[network]\n"
        "n_bar_a = 30\n"
        "alpha = 4\n"
        "[sweep]\n"
        "axis = p_tx\n"
        "grid = 0.1 0.2\n"
        "schemes = NBO NN\n";
    const ExperimentConfig cfg = parse_config(text);
    CHECK(cfg.kind == ExperimentKind::adorp_sweep);
    CHECK(cfg.seed == 1);
    CHECK(cfg.mc.realizations == 20000);
    CHECK(cfg.network.n_bar_a() == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(cfg.sweep.grid.size() == 2);
    CHECK(cfg.sweep.schemes.size() == 2);
}

TEST_CASE("constraint violations name the key and line") {
    const std::string text =
        "kind = adorp-sweep\n"
        "[network]\n"
        "p_tx = 1.5\n"
        "n_bar_a = 30\n"
        "[sweep]\n"
        "grid = 0.1\n"
        "schemes = NN\n";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        CHECK(has_issue(err, "network.p_tx", 3));
    }
}

TEST_CASE("duplicate keys are rejected, not last-wins") {
    const std::string text =
        "kind = adorp-sweep\n"
        "seed = 1\n"
        "seed = 2\n"
        "[network]\n"
        "n_bar_a = 30\n"
        "[sweep]\n"
        "grid = 0.1\n"
        "schemes = NN\n";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        CHECK(has_issue(err, "seed", 3));
    }
}

TEST_CASE("unknown keys and sections are rejected") {
    const std::string text =
        "kind = adorp-sweep\n"
        "[network]\n"
        "n_bar_a = 30\n"
        "bogus_key = 1\n"
        "[mystery]\n"
        "x = 2\n"
        "[sweep]\n"
        "grid = 0.1\n"
        "schemes = NN\n";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        CHECK(has_issue(err, "network.bogus_key", 4));
        CHECK(has_issue(err, "mystery"));
    }
}

TEST_CASE("r_a and n_bar_a are mutually exclusive") {
    const std::string text =
        "kind = adorp-sweep\n"
        "[network]\n"
        "r_a = 2\n"
        "n_bar_a = 30\n"
        "[sweep]\n"
        "grid = 0.1\n"
        "schemes = NN\n";
    CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("missing required section is an error") {
    CHECK_THROWS_AS(parse_config("kind = adorp-sweep\n[network]\nn_bar_a = 30\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[network]\nn_bar_a = 30\n"), ConfigError);
}

TEST_CASE("render and parse round-trip for every preset") {
    for (const int figure : {3, 4, 5, 6}) {
        const ExperimentConfig cfg = paper_figure_config(figure);
        const std::string text = render_config(cfg);
        const ExperimentConfig reparsed = parse_config(text);
        CHECK(render_config(reparsed) == text);
    }
    CHECK_THROWS_AS(paper_figure_config(7), std::invalid_argument);
}

TEST_CASE("round-trip preserves a customized config") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::netsim;
    cfg.seed = 987654321;
    cfg.out = "runs.csv";
    cfg.workers = 3;
    cfg.network.lambda = 0.1;
    cfg.network.p_tx = 0.25;
    cfg.network.alpha = 3.0;
    cfg.network.r_a = 9.7720502380583984;
    cfg.netsim.slots = 12345;
    cfg.netsim.gen_prob = 0.0125;
    cfg.netsim.p_grid = {0.1, 0.2, 0.3};
    cfg.netsim.schemes = {SchemeId::nbo, SchemeId::nn};
    const std::string text = render_config(cfg);
    const ExperimentConfig reparsed = parse_config(text);
    CHECK(render_config(reparsed) == text);
    CHECK(reparsed.netsim.slots == 12345);
    CHECK(reparsed.network.r_a == cfg.network.r_a);  // shortest round-trip exactness
}

TEST_CASE("comments and blank lines are ignored") {
    const std::string text =
        "# experiment\n"
        "kind = build-qtable\n"
        "\n"
        "[network]  # constants\n"
        "n_bar_a = 30\n"
        "[qtable]\n"
        "points = 64\n";
    const ExperimentConfig cfg = parse_config(text);
    CHECK(cfg.kind == ExperimentKind::build_qtable);
    CHECK(cfg.qtable.points == 64);
}
