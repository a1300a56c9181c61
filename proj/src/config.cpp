#include "wanet/config.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "wanet/csv.hpp"

namespace wanet {

std::string_view kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::adorp_sweep: return "adorp-sweep";
        case ExperimentKind::netsim: return "netsim";
        case ExperimentKind::build_qtable: return "build-qtable";
        case ExperimentKind::validate_bounds: return "validate-bounds";
        case ExperimentKind::tune_threshold: return "tune-threshold";
    }
    return "?";
}

namespace {

struct RawEntry {
    int line = 0;
    std::string value;
    bool used = false;
};

struct RawConfig {
    // section -> key -> entry; "" is the top-level section
    std::map<std::string, std::map<std::string, RawEntry>> sections;
    std::map<std::string, int> section_lines;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

class Reader {
public:
    Reader(RawConfig raw, std::vector<ConfigIssue>& issues) : raw_(std::move(raw)), issues_(issues) {}

    bool has_section(const std::string& name) const { return raw_.sections.count(name) > 0; }

    RawEntry* find(const std::string& section, const std::string& key) {
        auto sit = raw_.sections.find(section);
        if (sit == raw_.sections.end()) return nullptr;
        auto kit = sit->second.find(key);
        if (kit == sit->second.end()) return nullptr;
        kit->second.used = true;
        return &kit->second;
    }

    void issue(int line, const std::string& key, std::string reason) {
        issues_.push_back({line, key, std::move(reason)});
    }

    double number(const std::string& section, const std::string& key, double fallback) {
        RawEntry* e = find(section, key);
        if (e == nullptr) return fallback;
        return parse_number(*e, qualify(section, key), fallback);
    }

    std::uint64_t integer(const std::string& section, const std::string& key,
                          std::uint64_t fallback) {
        RawEntry* e = find(section, key);
        if (e == nullptr) return fallback;
        std::uint64_t v = 0;
        const std::string t = trim(e->value);
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
            issue(e->line, qualify(section, key), "expected a non-negative integer, got '" + t + "'");
            return fallback;
        }
        return v;
    }

    bool boolean(const std::string& section, const std::string& key, bool fallback) {
        RawEntry* e = find(section, key);
        if (e == nullptr) return fallback;
        const std::string t = trim(e->value);
        if (t == "true") return true;
        if (t == "false") return false;
        issue(e->line, qualify(section, key), "expected true or false, got '" + t + "'");
        return fallback;
    }

    std::string text(const std::string& section, const std::string& key,
                     const std::string& fallback) {
        RawEntry* e = find(section, key);
        if (e == nullptr) return fallback;
        return trim(e->value);
    }

    std::vector<double> number_list(const std::string& section, const std::string& key,
                                    std::vector<double> fallback) {
        RawEntry* e = find(section, key);
        if (e == nullptr) return fallback;
        std::vector<double> out;
        for (const auto& tok : split_ws(e->value)) {
            double v = 0.0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
                issue(e->line, qualify(section, key), "expected a number, got '" + tok + "'");
                return fallback;
            }
            out.push_back(v);
        }
        if (out.empty()) issue(e->line, qualify(section, key), "expected a non-empty list");
        return out;
    }

    std::vector<SchemeId> scheme_list(const std::string& section, const std::string& key,
                                      std::vector<SchemeId> fallback) {
        RawEntry* e = find(section, key);
        if (e == nullptr) return fallback;
        std::vector<SchemeId> out;
        for (const auto& tok : split_ws(e->value)) {
            const auto id = scheme_from_name(tok);
            if (!id) {
                issue(e->line, qualify(section, key),
                      "unknown scheme '" + tok + "' (SO, BO, NSO, NBO, NN, THRESHOLD)");
                return fallback;
            }
            out.push_back(*id);
        }
        if (out.empty()) issue(e->line, qualify(section, key), "expected a non-empty list");
        return out;
    }

    void check_constraint(const std::string& section, const std::string& key, bool ok,
                          const std::string& reason) {
        if (ok) return;
        int line = 0;
        auto sit = raw_.sections.find(section);
        if (sit != raw_.sections.end()) {
            auto kit = sit->second.find(key);
            if (kit != sit->second.end()) line = kit->second.line;
        }
        issue(line, qualify(section, key), reason);
    }

    void reject_unused(const std::set<std::string>& known_sections) {
        for (const auto& [name, entries] : raw_.sections) {
            if (known_sections.count(name) == 0) {
                issue(raw_.section_lines.at(name), name, "unknown section");
                continue;
            }
            for (const auto& [key, entry] : entries)
                if (!entry.used) issue(entry.line, qualify(name, key), "unknown key");
        }
    }

    static std::string qualify(const std::string& section, const std::string& key) {
        return section.empty() ? key : section + "." + key;
    }

private:
    double parse_number(RawEntry& e, const std::string& key, double fallback) {
        const std::string t = trim(e.value);
        double v = 0.0;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
            issue(e.line, key, "expected a number, got '" + t + "'");
            return fallback;
        }
        return v;
    }

    RawConfig raw_;
    std::vector<ConfigIssue>& issues_;
};

RawConfig tokenize(const std::string& text, std::vector<ConfigIssue>& issues) {
    RawConfig raw;
    raw.sections[""];
    raw.section_lines[""] = 0;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                issues.push_back({lineno, line, "malformed section header"});
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (raw.sections.count(section) > 0 && !raw.sections[section].empty()) {
                // reopening a section is fine as long as keys stay unique
            }
            raw.sections[section];
            raw.section_lines.emplace(section, lineno);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back({lineno, line, "expected 'key = value'"});
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            issues.push_back({lineno, line, "empty key"});
            continue;
        }
        auto& sec = raw.sections[section];
        if (sec.count(key) > 0) {
            issues.push_back({lineno, Reader::qualify(section, key),
                              "duplicate key (first set on line " +
                                  std::to_string(sec[key].line) + ")"});
            continue;
        }
        sec[key] = RawEntry{lineno, value, false};
    }
    return raw;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    std::vector<ConfigIssue> issues;
    RawConfig raw = tokenize(text, issues);
    Reader r(std::move(raw), issues);

    ExperimentConfig cfg;

    const std::string kind_text = r.text("", "kind", "");
    bool kind_ok = false;
    for (ExperimentKind k :
         {ExperimentKind::adorp_sweep, ExperimentKind::netsim, ExperimentKind::build_qtable,
          ExperimentKind::validate_bounds, ExperimentKind::tune_threshold}) {
        if (kind_text == kind_name(k)) {
            cfg.kind = k;
            kind_ok = true;
        }
    }
    if (!kind_ok)
        r.issue(0, "kind",
                kind_text.empty() ? "missing (adorp-sweep, netsim, build-qtable, validate-bounds, "
                                    "tune-threshold)"
                                  : "unknown kind '" + kind_text + "'");

    cfg.seed = r.integer("", "seed", cfg.seed);
    cfg.out = r.text("", "out", cfg.out);
    cfg.workers = static_cast<unsigned>(r.integer("", "workers", cfg.workers));

    // [network]
    cfg.network.lambda = r.number("network", "lambda", cfg.network.lambda);
    cfg.network.p_tx = r.number("network", "p_tx", cfg.network.p_tx);
    cfg.network.alpha = r.number("network", "alpha", cfg.network.alpha);
    cfg.network.rho = r.number("network", "rho", cfg.network.rho);
    cfg.network.sigma_v2 = r.number("network", "sigma_v2", cfg.network.sigma_v2);
    cfg.network.bandwidth = r.number("network", "bandwidth", cfg.network.bandwidth);
    const bool has_ra = r.find("network", "r_a") != nullptr;
    const bool has_nbar = r.find("network", "n_bar_a") != nullptr;
    if (has_ra && has_nbar)
        r.check_constraint("network", "n_bar_a", false, "r_a and n_bar_a are mutually exclusive");
    if (has_ra) cfg.network.r_a = r.number("network", "r_a", cfg.network.r_a);
    if (has_nbar && !has_ra) {
        const double nbar = r.number("network", "n_bar_a", 30.0);
        if (nbar > 0.0 && cfg.network.lambda > 0.0)
            cfg.network.r_a = std::sqrt(nbar / (cfg.network.lambda * std::numbers::pi));
        else
            r.check_constraint("network", "n_bar_a", false, "must be > 0");
    }
    r.check_constraint("network", "lambda", cfg.network.lambda > 0.0, "must be > 0");
    r.check_constraint("network", "p_tx", cfg.network.p_tx > 0.0 && cfg.network.p_tx < 1.0,
                       "must be in (0,1)");
    r.check_constraint("network", "alpha", cfg.network.alpha > 2.0, "must be > 2");
    r.check_constraint("network", "rho", cfg.network.rho > 0.0, "must be > 0");
    r.check_constraint("network", "sigma_v2", cfg.network.sigma_v2 >= 0.0, "must be >= 0");
    r.check_constraint("network", "bandwidth", cfg.network.bandwidth > 0.0, "must be > 0");
    r.check_constraint("network", "r_a", cfg.network.r_a > 0.0, "must be > 0");

    // [mc]
    cfg.mc.realizations = r.integer("mc", "realizations", cfg.mc.realizations);
    cfg.mc.so_samples = static_cast<std::uint32_t>(r.integer("mc", "so_samples", cfg.mc.so_samples));
    cfg.mc.r_trunc = r.number("mc", "r_trunc", cfg.mc.r_trunc);
    cfg.mc.tail_compensation = r.boolean("mc", "tail_compensation", cfg.mc.tail_compensation);
    r.check_constraint("mc", "realizations", cfg.mc.realizations >= 1, "must be >= 1");
    r.check_constraint("mc", "so_samples", cfg.mc.so_samples >= 1, "must be >= 1");
    r.check_constraint("mc", "r_trunc", cfg.mc.r_trunc == 0.0 || cfg.mc.r_trunc > cfg.network.r_a,
                       "must be 0 (auto) or > r_a");

    // [sweep]
    const std::string axis_text = r.text("sweep", "axis", std::string(axis_name(cfg.sweep.axis)));
    const auto axis = axis_from_name(axis_text);
    if (axis)
        cfg.sweep.axis = *axis;
    else
        r.check_constraint("sweep", "axis", false,
                           "unknown axis '" + axis_text + "' (p_tx, n_bar_a, snr)");
    cfg.sweep.grid = r.number_list("sweep", "grid", cfg.sweep.grid);
    cfg.sweep.schemes = r.scheme_list("sweep", "schemes", cfg.sweep.schemes);
    for (std::size_t i = 1; i < cfg.sweep.grid.size(); ++i)
        if (!(cfg.sweep.grid[i] > cfg.sweep.grid[i - 1])) {
            r.check_constraint("sweep", "grid", false, "must be strictly increasing");
            break;
        }

    // [qtable]
    cfg.qtable.points = r.integer("qtable", "points", cfg.qtable.points);
    cfg.qtable.samples = r.integer("qtable", "samples", cfg.qtable.samples);
    cfg.qtable.x_min_factor = r.number("qtable", "x_min_factor", cfg.qtable.x_min_factor);
    cfg.qtable.x_max_factor = r.number("qtable", "x_max_factor", cfg.qtable.x_max_factor);
    r.check_constraint("qtable", "points", cfg.qtable.points >= 2, "must be >= 2");
    r.check_constraint("qtable", "samples", cfg.qtable.samples >= 1, "must be >= 1");
    r.check_constraint("qtable", "x_min_factor", cfg.qtable.x_min_factor > 0.0, "must be > 0");
    r.check_constraint("qtable", "x_max_factor",
                       cfg.qtable.x_max_factor > cfg.qtable.x_min_factor, "must be > x_min_factor");

    // [netsim]
    cfg.netsim.area = r.number("netsim", "area", cfg.netsim.area);
    cfg.netsim.n_nodes = r.number("netsim", "n_nodes", cfg.netsim.n_nodes);
    cfg.netsim.mobility_sigma = r.number("netsim", "mobility_sigma", cfg.netsim.mobility_sigma);
    cfg.netsim.slots = r.integer("netsim", "slots", cfg.netsim.slots);
    cfg.netsim.gen_prob = r.number("netsim", "gen_prob", cfg.netsim.gen_prob);
    cfg.netsim.k_bits = r.number("netsim", "k_bits", cfg.netsim.k_bits);
    cfg.netsim.schemes = r.scheme_list("netsim", "schemes", cfg.netsim.schemes);
    cfg.netsim.p_grid = r.number_list("netsim", "p_grid", cfg.netsim.p_grid);
    cfg.netsim.threshold = r.number("netsim", "threshold", cfg.netsim.threshold);
    cfg.netsim.so_samples =
        static_cast<std::uint32_t>(r.integer("netsim", "so_samples", cfg.netsim.so_samples));
    r.check_constraint("netsim", "area", cfg.netsim.area > 0.0, "must be > 0");
    r.check_constraint("netsim", "n_nodes", cfg.netsim.n_nodes >= 0.0, "must be >= 0");
    r.check_constraint("netsim", "mobility_sigma", cfg.netsim.mobility_sigma >= 0.0,
                       "must be >= 0");
    r.check_constraint("netsim", "slots", cfg.netsim.slots >= 1, "must be >= 1");
    r.check_constraint("netsim", "gen_prob",
                       cfg.netsim.gen_prob >= 0.0 && cfg.netsim.gen_prob <= 1.0,
                       "must be in [0,1]");
    r.check_constraint("netsim", "k_bits", cfg.netsim.k_bits > 0.0, "must be > 0");
    for (const double p : cfg.netsim.p_grid)
        if (!(p > 0.0 && p < 1.0)) {
            r.check_constraint("netsim", "p_grid", false, "entries must be in (0,1)");
            break;
        }

    // [tune]
    cfg.tune.grid = r.number_list("tune", "grid", cfg.tune.grid);

    // [validate]
    cfg.validate.geometries = r.integer("validate", "geometries", cfg.validate.geometries);
    cfg.validate.mc_draws = r.integer("validate", "mc_draws", cfg.validate.mc_draws);
    cfg.validate.alphas = r.number_list("validate", "alphas", cfg.validate.alphas);
    r.check_constraint("validate", "geometries", cfg.validate.geometries >= 1, "must be >= 1");
    for (const double a : cfg.validate.alphas)
        if (!(a > 2.0)) {
            r.check_constraint("validate", "alphas", false, "entries must be > 2");
            break;
        }

    // Required blocks per kind.
    if (kind_ok) {
        auto require = [&](const char* section) {
            if (!r.has_section(section))
                r.issue(0, section,
                        std::string("section required for kind ") +
                            std::string(kind_name(cfg.kind)));
        };
        require("network");
        switch (cfg.kind) {
            case ExperimentKind::adorp_sweep:
                require("sweep");
                if (cfg.sweep.grid.empty()) r.issue(0, "sweep.grid", "required");
                if (cfg.sweep.schemes.empty()) r.issue(0, "sweep.schemes", "required");
                break;
            case ExperimentKind::netsim:
                require("netsim");
                break;
            case ExperimentKind::build_qtable:
                break;
            case ExperimentKind::validate_bounds:
                break;
            case ExperimentKind::tune_threshold:
                break;
        }
    }

    r.reject_unused({"", "network", "mc", "sweep", "qtable", "netsim", "tune", "validate"});

    if (!issues.empty()) {
        std::string what = "config errors:";
        for (const auto& issue : issues) {
            what += "\n  line " + std::to_string(issue.line) + ", " + issue.key + ": " +
                    issue.reason;
        }
        throw ConfigError(what, issues);
    }
    return cfg;
}

namespace {

void emit(std::ostringstream& out, const char* key, double v) {
    out << key << " = " << format_double(v) << "\n";
}
void emit(std::ostringstream& out, const char* key, std::uint64_t v) {
    out << key << " = " << format_u64(v) << "\n";
}
void emit(std::ostringstream& out, const char* key, const std::string& v) {
    out << key << " = " << v << "\n";
}
void emit_list(std::ostringstream& out, const char* key, const std::vector<double>& v) {
    out << key << " =";
    for (const double x : v) out << ' ' << format_double(x);
    out << "\n";
}
void emit_schemes(std::ostringstream& out, const char* key, const std::vector<SchemeId>& v) {
    out << key << " =";
    for (const SchemeId s : v) out << ' ' << scheme_name(s);
    out << "\n";
}

}  // namespace

std::string render_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    emit(out, "kind", std::string(kind_name(cfg.kind)));
    emit(out, "seed", cfg.seed);
    emit(out, "out", cfg.out);
    emit(out, "workers", static_cast<std::uint64_t>(cfg.workers));
    out << "\n[network]\n";
    emit(out, "lambda", cfg.network.lambda);
    emit(out, "p_tx", cfg.network.p_tx);
    emit(out, "alpha", cfg.network.alpha);
    emit(out, "rho", cfg.network.rho);
    emit(out, "sigma_v2", cfg.network.sigma_v2);
    emit(out, "bandwidth", cfg.network.bandwidth);
    emit(out, "r_a", cfg.network.r_a);
    out << "\n[mc]\n";
    emit(out, "realizations", cfg.mc.realizations);
    emit(out, "so_samples", static_cast<std::uint64_t>(cfg.mc.so_samples));
    emit(out, "r_trunc", cfg.mc.r_trunc);
    emit(out, "tail_compensation", std::string(cfg.mc.tail_compensation ? "true" : "false"));
    switch (cfg.kind) {
        case ExperimentKind::adorp_sweep:
            out << "\n[sweep]\n";
            emit(out, "axis", std::string(axis_name(cfg.sweep.axis)));
            emit_list(out, "grid", cfg.sweep.grid);
            emit_schemes(out, "schemes", cfg.sweep.schemes);
            break;
        case ExperimentKind::build_qtable:
            out << "\n[qtable]\n";
            emit(out, "points", static_cast<std::uint64_t>(cfg.qtable.points));
            emit(out, "samples", cfg.qtable.samples);
            emit(out, "x_min_factor", cfg.qtable.x_min_factor);
            emit(out, "x_max_factor", cfg.qtable.x_max_factor);
            break;
        case ExperimentKind::netsim:
            out << "\n[netsim]\n";
            emit(out, "area", cfg.netsim.area);
            emit(out, "n_nodes", cfg.netsim.n_nodes);
            emit(out, "mobility_sigma", cfg.netsim.mobility_sigma);
            emit(out, "slots", cfg.netsim.slots);
            emit(out, "gen_prob", cfg.netsim.gen_prob);
            emit(out, "k_bits", cfg.netsim.k_bits);
            emit_schemes(out, "schemes", cfg.netsim.schemes);
            if (!cfg.netsim.p_grid.empty()) emit_list(out, "p_grid", cfg.netsim.p_grid);
            emit(out, "threshold", cfg.netsim.threshold);
            emit(out, "so_samples", static_cast<std::uint64_t>(cfg.netsim.so_samples));
            break;
        case ExperimentKind::tune_threshold:
            out << "\n[tune]\n";
            if (!cfg.tune.grid.empty()) emit_list(out, "grid", cfg.tune.grid);
            break;
        case ExperimentKind::validate_bounds:
            out << "\n[validate]\n";
            emit(out, "geometries", cfg.validate.geometries);
            emit(out, "mc_draws", cfg.validate.mc_draws);
            emit_list(out, "alphas", cfg.validate.alphas);
            break;
    }
    return out.str();
}

ExperimentConfig paper_figure_config(int figure) {
    ExperimentConfig cfg;
    cfg.network.lambda = 1.0;
    cfg.network.rho = 1.0;
    cfg.network.sigma_v2 = 0.0;
    cfg.network.bandwidth = 1.0;
    const auto all_schemes = std::vector<SchemeId>{SchemeId::so,  SchemeId::bo,
                                                   SchemeId::nso, SchemeId::nbo,
                                                   SchemeId::threshold, SchemeId::nn};
    switch (figure) {
        case 3:
            cfg.kind = ExperimentKind::adorp_sweep;
            cfg.network.alpha = 4.0;
            cfg.network.p_tx = 0.2;
            cfg.network = NetworkParams::with_n_bar_a(cfg.network, 30.0);
            cfg.sweep.axis = SweepAxis::p_tx;
            cfg.sweep.grid = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5};
            cfg.sweep.schemes = all_schemes;
            cfg.out = "fig3.csv";
            break;
        case 4:
            cfg.kind = ExperimentKind::adorp_sweep;
            cfg.network.alpha = 4.0;
            cfg.network.p_tx = 0.15;
            cfg.network = NetworkParams::with_n_bar_a(cfg.network, 30.0);
            cfg.sweep.axis = SweepAxis::n_bar_a;
            cfg.sweep.grid = {2.0, 5.0, 10.0, 20.0, 30.0};
            cfg.sweep.schemes = all_schemes;
            cfg.out = "fig4.csv";
            break;
        case 5:
            cfg.kind = ExperimentKind::netsim;
            cfg.network.alpha = 3.0;
            cfg.network.p_tx = 0.2;
            cfg.network.lambda = 0.1;  // 100 nodes over 1000 square units
            cfg.network = NetworkParams::with_n_bar_a(cfg.network, 30.0);
            cfg.netsim.area = 1000.0;
            cfg.netsim.n_nodes = 100.0;
            cfg.netsim.mobility_sigma = 2.84;
            cfg.netsim.slots = 100000;
            cfg.netsim.schemes = {SchemeId::nbo, SchemeId::nn};
            cfg.netsim.p_grid = {0.1, 0.2, 0.3};
            cfg.out = "fig5.csv";
            break;
        case 6:
            cfg.kind = ExperimentKind::adorp_sweep;
            cfg.network.alpha = 3.0;
            cfg.network.p_tx = 0.15;
            cfg.network = NetworkParams::with_n_bar_a(cfg.network, 30.0);
            cfg.sweep.axis = SweepAxis::snr;
            cfg.sweep.grid = {-60.0, -50.0, -40.0, -30.0, -20.0, -10.0, 0.0, 10.0, 20.0};
            cfg.sweep.schemes = all_schemes;
            cfg.out = "fig6.csv";
            break;
        default:
            throw std::invalid_argument("paper_figure_config: figure must be 3, 4, 5 or 6");
    }
    return cfg;
}

}  // namespace wanet
