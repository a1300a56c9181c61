#include "wanet/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wanet/channel.hpp"
#include "wanet/csv.hpp"

namespace wanet {

std::string_view scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::so: return "SO";
        case SchemeId::bo: return "BO";
        case SchemeId::nso: return "NSO";
        case SchemeId::nbo: return "NBO";
        case SchemeId::nn: return "NN";
        case SchemeId::threshold: return "THRESHOLD";
    }
    return "?";
}

std::optional<SchemeId> scheme_from_name(std::string_view name) {
    for (SchemeId id : {SchemeId::so, SchemeId::bo, SchemeId::nso, SchemeId::nbo, SchemeId::nn,
                        SchemeId::threshold})
        if (name == scheme_name(id)) return id;
    return std::nullopt;
}

std::string params_fingerprint(const NetworkParams& p) {
    std::string s = "lambda=" + format_double(p.lambda);
    s += ";p_tx=" + format_double(p.p_tx);
    s += ";alpha=" + format_double(p.alpha);
    s += ";rho=" + format_double(p.rho);
    s += ";sigma_v2=" + format_double(p.sigma_v2);
    s += ";r_a=" + format_double(p.r_a);
    return s;
}

double QTable::lookup(double s, bool* clamped) const {
    if (x.size() < 2) throw std::logic_error("QTable::lookup: table not built");
    if (clamped != nullptr) *clamped = false;
    if (s <= x.front()) {
        if (clamped != nullptr && s < x.front()) *clamped = true;
        return q.front();
    }
    if (s >= x.back()) {
        if (clamped != nullptr && s > x.back()) *clamped = true;
        return q.back();
    }
    const double ln_x0 = std::log(x.front());
    const double step = (std::log(x.back()) - ln_x0) / static_cast<double>(x.size() - 1);
    const double pos = (std::log(s) - ln_x0) / step;
    std::size_t k = static_cast<std::size_t>(pos);
    if (k >= x.size() - 1) k = x.size() - 2;
    const double t = pos - static_cast<double>(k);
    return q[k] * (1.0 - t) + q[k + 1] * t;
}

QTable build_q_table(const NetworkParams& params, const QTableConfig& grid, const McConfig& mc,
                     RandomStream& rng) {
    params.validate();
    if (grid.points < 2) throw std::invalid_argument("build_q_table: need at least 2 grid points");
    if (!(grid.x_min_factor > 0.0) || !(grid.x_max_factor > grid.x_min_factor))
        throw std::invalid_argument("build_q_table: need 0 < x_min < x_max");
    if (grid.samples < 1) throw std::invalid_argument("build_q_table: need samples >= 1");

    const double ref = params.rho * std::pow(params.r_a, -params.alpha);
    const double x_min = grid.x_min_factor * ref;
    const double x_max = grid.x_max_factor * ref;

    QTable table;
    table.fingerprint = params_fingerprint(params);
    table.mc_samples = grid.samples;
    table.x.resize(grid.points);
    const double ln_ratio = std::log(x_max / x_min);
    for (std::size_t k = 0; k < grid.points; ++k)
        table.x[k] = x_min * std::exp(ln_ratio * static_cast<double>(k) /
                                      static_cast<double>(grid.points - 1));

    // Interference at a typical receiving point: the narrow-knowledge J is a
    // full-plane shot noise, so the sampling disk is centered on the receiver.
    const double r_trunc =
        mc.r_trunc > 0.0 ? mc.r_trunc : auto_r_trunc(params, mc.tail_compensation);
    const ExteriorField field(params.lambda * params.p_tx, params.rho, params.alpha, 0.0, r_trunc,
                              mc.tail_compensation, 0.0);
    std::vector<double> draws(grid.samples);
    const Point2 origin{0.0, 0.0};
    for (std::uint64_t s = 0; s < grid.samples; ++s) {
        double j = 0.0;
        field.add_sample({&origin, 1}, {&j, 1}, rng);
        draws[s] = j;
    }

    // One shared draw set across knots keeps the table monotone in x by
    // construction and every knot's estimator unchanged.
    table.q.resize(grid.points);
    table.se.resize(grid.points);
    const double inv_n = 1.0 / static_cast<double>(grid.samples);
    for (std::size_t k = 0; k < grid.points; ++k) {
        double sum = 0.0, sum2 = 0.0;
        for (const double j : draws) {
            const double denom = j + params.sigma_v2;
            if (!(denom > 0.0))
                throw std::domain_error("build_q_table: zero interference-plus-noise draw");
            const double v = std::log2(1.0 + table.x[k] / denom);
            sum += v;
            sum2 += v * v;
        }
        table.q[k] = sum * inv_n;
        const double var = std::max(0.0, sum2 * inv_n - table.q[k] * table.q[k]);
        table.se[k] = std::sqrt(var * inv_n);
    }

    // Isotonic guard (pool adjacent violators); unreachable with shared draws.
    for (std::size_t k = 1; k < table.q.size(); ++k) {
        if (table.q[k] < table.q[k - 1]) {
            table.repaired = true;
            table.q[k] = table.q[k - 1];
        }
    }
    return table;
}

std::vector<CandidateEvaluation> so_metrics_all(const ProbeRealization& realization,
                                                const NetworkParams& params,
                                                std::uint32_t samples,
                                                const ExteriorField& exterior,
                                                RandomStream& rng) {
    if (samples < 1) throw std::invalid_argument("so_metrics_all: need samples >= 1");
    const auto& nb = realization.neighbors;
    const std::size_t n = nb.size();
    std::vector<CandidateEvaluation> out(n);
    if (n == 0) return out;

    std::vector<Point2> pos(n);
    std::vector<double> s_pow(n), sum(n, 0.0), sum2(n, 0.0), j(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos[i] = nb[i].pos;
        const double r = norm(pos[i]);
        if (!(r > 0.0)) throw std::invalid_argument("so_metrics_all: candidate at the probe");
        s_pow[i] = params.rho * pathloss(r * r, params.alpha) * nb[i].w;
    }

    for (std::uint32_t s = 0; s < samples; ++s) {
        std::fill(j.begin(), j.end(), 0.0);
        exterior.add_sample(pos, j, rng);
        for (std::size_t l = 0; l < n; ++l) {
            if (!rng.bernoulli(params.p_tx)) continue;
            const double w = rng.exponential();
            for (std::size_t i = 0; i < n; ++i) {
                if (i == l) continue;
                const double dx = pos[l].x - pos[i].x;
                const double dy = pos[l].y - pos[i].y;
                j[i] += params.rho * pathloss(dx * dx + dy * dy, params.alpha) * w;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double denom = j[i] + params.sigma_v2;
            if (!(denom > 0.0))
                throw std::domain_error("so_metrics_all: zero interference-plus-noise sample");
            const double v = std::log2(1.0 + s_pow[i] / denom);
            sum[i] += v;
            sum2[i] += v * v;
        }
    }

    const double inv = 1.0 / static_cast<double>(samples);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = norm(pos[i]);
        const double mean = sum[i] * inv;
        const double var = std::max(0.0, sum2[i] * inv - mean * mean);
        out[i].index = i;
        out[i].r = r;
        out[i].metric = r * mean;
        out[i].stderr_ = r * std::sqrt(var * inv);
        out[i].has_stderr = true;
    }
    return out;
}

CandidateEvaluation metric_so(std::size_t candidate, const ProbeRealization& realization,
                              const NetworkParams& params, const McConfig& mc,
                              RandomStream& rng) {
    if (candidate >= realization.neighbors.size())
        throw std::out_of_range("metric_so: candidate index");
    const double r_trunc =
        mc.r_trunc > 0.0 ? mc.r_trunc : auto_r_trunc(params, mc.tail_compensation);
    const ExteriorField exterior(params.lambda * params.p_tx, params.rho, params.alpha,
                                 params.r_a, r_trunc, mc.tail_compensation, params.r_a);
    return so_metrics_all(realization, params, mc.so_samples, exterior, rng)[candidate];
}

CandidateEvaluation metric_bo(std::size_t candidate, const LocalKnowledge& knowledge,
                              const NetworkParams& params) {
    CandidateEvaluation eval;
    eval.index = candidate;
    eval.r = norm(knowledge.neighbors[candidate].pos);
    eval.metric = bounds::bound_g(candidate, knowledge, params);
    return eval;
}

CandidateEvaluation metric_nso(std::size_t candidate, const LocalKnowledge& knowledge,
                               const NetworkParams& params, const QTable& table) {
    if (table.fingerprint != params_fingerprint(params))
        throw std::invalid_argument("metric_nso: QTable fingerprint mismatch (" +
                                    table.fingerprint + " vs " + params_fingerprint(params) + ")");
    if (candidate >= knowledge.neighbors.size())
        throw std::out_of_range("metric_nso: candidate index");
    CandidateEvaluation eval;
    eval.index = candidate;
    eval.r = norm(knowledge.neighbors[candidate].pos);
    const double s = signal_power(params.rho, eval.r, params.alpha, knowledge.neighbors[candidate].w);
    bool clamped = false;
    eval.metric = eval.r * table.lookup(s, &clamped);
    eval.clamped = clamped;
    return eval;
}

CandidateEvaluation metric_nbo(std::size_t candidate, const LocalKnowledge& knowledge,
                               const NetworkParams& params, double gamma_b) {
    if (candidate >= knowledge.neighbors.size())
        throw std::out_of_range("metric_nbo: candidate index");
    if (gamma_b < 0.0) gamma_b = 1.0 / (params.sigma_v2 + bounds::gamma_const(params));
    CandidateEvaluation eval;
    eval.index = candidate;
    eval.r = norm(knowledge.neighbors[candidate].pos);
    const double s = signal_power(params.rho, eval.r, params.alpha, knowledge.neighbors[candidate].w);
    eval.metric = eval.r * std::log2(1.0 + gamma_b * s);
    return eval;
}

CandidateEvaluation metric_nn(std::size_t candidate, const LocalKnowledge& knowledge) {
    if (candidate >= knowledge.neighbors.size())
        throw std::out_of_range("metric_nn: candidate index");
    CandidateEvaluation eval;
    eval.index = candidate;
    eval.r = norm(knowledge.neighbors[candidate].pos);
    eval.metric = -eval.r;
    return eval;
}

CandidateEvaluation metric_threshold(std::size_t candidate, const LocalKnowledge& knowledge,
                                     const NetworkParams& params, double threshold) {
    if (candidate >= knowledge.neighbors.size())
        throw std::out_of_range("metric_threshold: candidate index");
    if (!(threshold >= 0.0)) throw std::invalid_argument("metric_threshold: threshold must be >= 0");
    CandidateEvaluation eval;
    eval.index = candidate;
    eval.r = norm(knowledge.neighbors[candidate].pos);
    const double s = signal_power(params.rho, eval.r, params.alpha, knowledge.neighbors[candidate].w);
    if (s >= threshold) {
        eval.metric = eval.r;
    } else {
        eval.metric = -std::numeric_limits<double>::infinity();
        eval.eligible = false;
    }
    return eval;
}

std::optional<std::size_t> select_relay(std::span<const CandidateEvaluation> evaluations) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < evaluations.size(); ++k) {
        const auto& e = evaluations[k];
        if (!e.eligible) continue;
        if (!best) {
            best = k;
            continue;
        }
        const auto& b = evaluations[*best];
        if (e.metric > b.metric ||
            (e.metric == b.metric && (e.r < b.r || (e.r == b.r && e.index < b.index))))
            best = k;
    }
    if (!best) return std::nullopt;
    return evaluations[*best].index;
}

}  // namespace wanet
