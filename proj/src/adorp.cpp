#include "wanet/adorp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wanet/channel.hpp"
#include "wanet/parallel.hpp"

namespace wanet {

std::string_view axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::p_tx: return "p_tx";
        case SweepAxis::n_bar_a: return "n_bar_a";
        case SweepAxis::snr: return "snr";
    }
    return "?";
}

std::optional<SweepAxis> axis_from_name(std::string_view name) {
    for (SweepAxis a : {SweepAxis::p_tx, SweepAxis::n_bar_a, SweepAxis::snr})
        if (name == axis_name(a)) return a;
    return std::nullopt;
}

NetworkParams apply_axis(const NetworkParams& tmpl, SweepAxis axis, double abscissa) {
    NetworkParams p = tmpl;
    switch (axis) {
        case SweepAxis::p_tx:
            p.p_tx = abscissa;
            break;
        case SweepAxis::n_bar_a:
            p = NetworkParams::with_n_bar_a(p, abscissa);
            break;
        case SweepAxis::snr:
            p.sigma_v2 = p.rho / std::pow(10.0, abscissa / 10.0);
            break;
    }
    p.validate();
    return p;
}

namespace {

// Slot truth shared by every scheme at one realization: MAC states and the
// fading seen at whichever relay ends up selected.
struct SlotTruth {
    std::vector<std::uint8_t> nb_active;
    std::vector<double> nb_w_slot;
    std::vector<std::uint8_t> bg_active;
};

SlotTruth draw_slot_truth(const ProbeRealization& real, const NetworkParams& params,
                          RandomStream& rng) {
    SlotTruth truth;
    truth.nb_active.resize(real.neighbors.size());
    truth.nb_w_slot.resize(real.neighbors.size());
    truth.bg_active.resize(real.background.size());
    for (std::size_t k = 0; k < real.neighbors.size(); ++k) {
        truth.nb_active[k] = rng.bernoulli(params.p_tx) ? 1 : 0;
        truth.nb_w_slot[k] = rng.exponential();
    }
    for (std::size_t k = 0; k < real.background.size(); ++k)
        truth.bg_active[k] = rng.bernoulli(params.p_tx) ? 1 : 0;
    return truth;
}

// Realized r*rate at a selected relay: every other active node interferes,
// the listener factor (1-p_tx) is applied analytically by the caller.
double realized_progress(std::size_t relay, const ProbeRealization& real,
                         const SlotTruth& truth, const NetworkParams& params,
                         double tail_mean_at_relay) {
    const Point2 c = real.neighbors[relay].pos;
    const double r = norm(c);
    const double s = params.rho * pathloss(r * r, params.alpha) * real.neighbors[relay].w;
    double j = tail_mean_at_relay;
    for (std::size_t l = 0; l < real.neighbors.size(); ++l) {
        if (l == relay || truth.nb_active[l] == 0) continue;
        const double dx = real.neighbors[l].pos.x - c.x;
        const double dy = real.neighbors[l].pos.y - c.y;
        j += params.rho * pathloss(dx * dx + dy * dy, params.alpha) * truth.nb_w_slot[l];
    }
    for (std::size_t k = 0; k < real.background.size(); ++k) {
        if (truth.bg_active[k] == 0) continue;
        const double dx = real.background[k].pos.x - c.x;
        const double dy = real.background[k].pos.y - c.y;
        j += params.rho * pathloss(dx * dx + dy * dy, params.alpha) * real.background[k].w;
    }
    const double denom = j + params.sigma_v2;
    if (!(denom > 0.0)) throw std::domain_error("realized_progress: zero interference-plus-noise");
    return r * std::log2(1.0 + s / denom);
}

}  // namespace

MultiEstimate estimate_adorp_multi(std::span<const SchemeId> schemes,
                                   const NetworkParams& params, const McConfig& mc,
                                   std::uint64_t seed, std::uint64_t point_index,
                                   bool keep_contributions, const QTable* qtable,
                                   double threshold) {
    params.validate();
    if (mc.realizations < 1) throw std::invalid_argument("estimate_adorp: need realizations >= 1");
    const bool wants_so =
        std::find(schemes.begin(), schemes.end(), SchemeId::so) != schemes.end();
    const bool wants_nso =
        std::find(schemes.begin(), schemes.end(), SchemeId::nso) != schemes.end();
    const bool wants_nbo =
        std::find(schemes.begin(), schemes.end(), SchemeId::nbo) != schemes.end();
    if (wants_nso && qtable == nullptr)
        throw std::invalid_argument("estimate_adorp: NSO requires a QTable");

    const double r_trunc =
        mc.r_trunc > 0.0 ? mc.r_trunc : auto_r_trunc(params, mc.tail_compensation);
    // One field object serves both the SO inner MC and the realized-slot tail.
    const ExteriorField exterior(params.lambda * params.p_tx, params.rho, params.alpha,
                                 params.r_a, r_trunc, mc.tail_compensation, params.r_a);
    const double gamma_b =
        wants_nbo ? 1.0 / (params.sigma_v2 + bounds::gamma_const(params)) : 0.0;

    const std::size_t n_schemes = schemes.size();
    std::vector<std::vector<double>> contributions(n_schemes);
    for (auto& c : contributions) c.assign(mc.realizations, 0.0);

    const unsigned workers = mc.workers == 0 ? default_workers() : mc.workers;
    parallel_for(mc.realizations, workers, [&](std::size_t i) {
        RandomStream rng = make_stream(seed, StreamDomain::realization, point_index, i);
        const ProbeRealization real = sample_probe_realization(params, r_trunc, rng);
        if (real.neighbors.empty()) return;  // empty routing zone contributes zero
        const SlotTruth truth = draw_slot_truth(real, params, rng);
        const LocalKnowledge knowledge{real.neighbors};

        std::vector<CandidateEvaluation> so_evals;
        if (wants_so) {
            RandomStream so_rng = make_stream(seed, StreamDomain::scheme_mc, point_index, i);
            so_evals = so_metrics_all(real, params, mc.so_samples, exterior, so_rng);
        }

        // Realized slot outcomes are cached per candidate: schemes often pick
        // the same relay, and sharing keeps the comparison paired.
        std::vector<double> progress(real.neighbors.size(),
                                     -std::numeric_limits<double>::infinity());
        auto progress_at = [&](std::size_t relay) {
            if (progress[relay] ==
                -std::numeric_limits<double>::infinity()) {
                const double tail = exterior.tail_mean(norm(real.neighbors[relay].pos));
                progress[relay] = realized_progress(relay, real, truth, params, tail);
            }
            return progress[relay];
        };

        std::vector<CandidateEvaluation> evals(real.neighbors.size());
        for (std::size_t s = 0; s < n_schemes; ++s) {
            switch (schemes[s]) {
                case SchemeId::so:
                    evals = so_evals;
                    break;
                case SchemeId::bo:
                    for (std::size_t k = 0; k < real.neighbors.size(); ++k)
                        evals[k] = metric_bo(k, knowledge, params);
                    break;
                case SchemeId::nso:
                    for (std::size_t k = 0; k < real.neighbors.size(); ++k)
                        evals[k] = metric_nso(k, knowledge, params, *qtable);
                    break;
                case SchemeId::nbo:
                    for (std::size_t k = 0; k < real.neighbors.size(); ++k)
                        evals[k] = metric_nbo(k, knowledge, params, gamma_b);
                    break;
                case SchemeId::nn:
                    for (std::size_t k = 0; k < real.neighbors.size(); ++k)
                        evals[k] = metric_nn(k, knowledge);
                    break;
                case SchemeId::threshold:
                    for (std::size_t k = 0; k < real.neighbors.size(); ++k)
                        evals[k] = metric_threshold(k, knowledge, params, threshold);
                    break;
            }
            const auto sel = select_relay(evals);
            if (sel) contributions[s][i] = progress_at(*sel);
        }
    });

    MultiEstimate out;
    out.threshold_used = threshold;
    const double prefactor = params.lambda * params.p_tx * (1.0 - params.p_tx);
    const double inv_n = 1.0 / static_cast<double>(mc.realizations);
    for (std::size_t s = 0; s < n_schemes; ++s) {
        double sum = 0.0;
        for (const double v : contributions[s]) sum += v;
        const double mean = sum * inv_n;
        double var = 0.0;
        for (const double v : contributions[s]) var += (v - mean) * (v - mean);
        var *= inv_n;
        AdorpEstimate est;
        est.scheme = schemes[s];
        est.value = prefactor * mean;
        est.stderr_ = prefactor * std::sqrt(var * inv_n);
        est.realizations = mc.realizations;
        est.seed = seed;
        out.estimates.push_back(est);
    }
    if (keep_contributions) out.contributions = std::move(contributions);
    return out;
}

AdorpEstimate estimate_adorp(SchemeId scheme, const NetworkParams& params, const McConfig& mc,
                             std::uint64_t seed, std::uint64_t point_index) {
    const SchemeId one[] = {scheme};
    QTable table;
    const QTable* table_ptr = nullptr;
    if (scheme == SchemeId::nso) {
        RandomStream rng = make_stream(seed, StreamDomain::qtable, point_index);
        table = build_q_table(params, QTableConfig{}, mc, rng);
        table_ptr = &table;
    }
    double threshold = 0.0;
    if (scheme == SchemeId::threshold) {
        const auto grid = default_threshold_grid(params);
        threshold = tune_threshold(params, grid, mc, seed, point_index).threshold;
    }
    return estimate_adorp_multi(one, params, mc, seed, point_index, false, table_ptr, threshold)
        .estimates[0];
}

std::vector<double> default_threshold_grid(const NetworkParams& params) {
    const double ref = params.rho * std::pow(params.r_a, -params.alpha);
    std::vector<double> grid;
    for (int k = -4; k <= 6; ++k) grid.push_back(ref * std::pow(10.0, 0.5 * k));
    return grid;
}

ThresholdTuneResult tune_threshold(const NetworkParams& params, std::span<const double> grid,
                                   const McConfig& mc, std::uint64_t seed,
                                   std::uint64_t point_index) {
    params.validate();
    if (grid.empty()) throw std::invalid_argument("tune_threshold: empty grid");
    const std::uint64_t realizations =
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(mc.realizations, 4000));
    const double r_trunc =
        mc.r_trunc > 0.0 ? mc.r_trunc : auto_r_trunc(params, mc.tail_compensation);
    const ExteriorField exterior(params.lambda * params.p_tx, params.rho, params.alpha,
                                 params.r_a, r_trunc, mc.tail_compensation, params.r_a);

    std::vector<std::vector<double>> contributions(grid.size());
    for (auto& c : contributions) c.assign(realizations, 0.0);
    const unsigned workers = mc.workers == 0 ? default_workers() : mc.workers;
    parallel_for(realizations, workers, [&](std::size_t i) {
        RandomStream rng = make_stream(seed, StreamDomain::tune, point_index, i);
        const ProbeRealization real = sample_probe_realization(params, r_trunc, rng);
        if (real.neighbors.empty()) return;
        const SlotTruth truth = draw_slot_truth(real, params, rng);
        const LocalKnowledge knowledge{real.neighbors};
        std::vector<double> progress(real.neighbors.size(),
                                     -std::numeric_limits<double>::infinity());
        std::vector<CandidateEvaluation> evals(real.neighbors.size());
        for (std::size_t g = 0; g < grid.size(); ++g) {
            for (std::size_t k = 0; k < real.neighbors.size(); ++k)
                evals[k] = metric_threshold(k, knowledge, params, grid[g]);
            const auto sel = select_relay(evals);
            if (!sel) continue;
            if (progress[*sel] == -std::numeric_limits<double>::infinity()) {
                const double tail = exterior.tail_mean(norm(real.neighbors[*sel].pos));
                progress[*sel] = realized_progress(*sel, real, truth, params, tail);
            }
            contributions[g][i] = progress[*sel];
        }
    });

    ThresholdTuneResult out;
    out.grid.assign(grid.begin(), grid.end());
    const double prefactor = params.lambda * params.p_tx * (1.0 - params.p_tx);
    const double inv_n = 1.0 / static_cast<double>(realizations);
    std::size_t best = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double sum = 0.0;
        for (const double v : contributions[g]) sum += v;
        const double mean = sum * inv_n;
        double var = 0.0;
        for (const double v : contributions[g]) var += (v - mean) * (v - mean);
        var *= inv_n;
        AdorpEstimate est;
        est.scheme = SchemeId::threshold;
        est.value = prefactor * mean;
        est.stderr_ = prefactor * std::sqrt(var * inv_n);
        est.realizations = realizations;
        est.seed = seed;
        out.estimates.push_back(est);
        if (est.value > out.estimates[best].value) best = g;
    }
    out.threshold = grid[best];
    return out;
}

SweepResult sweep(SweepAxis axis, std::span<const double> grid,
                  std::span<const SchemeId> schemes, const NetworkParams& tmpl,
                  const McConfig& mc, std::uint64_t seed, bool keep_contributions) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw std::invalid_argument("sweep: grid must be strictly increasing");
    const bool wants_nso =
        std::find(schemes.begin(), schemes.end(), SchemeId::nso) != schemes.end();
    const bool wants_threshold =
        std::find(schemes.begin(), schemes.end(), SchemeId::threshold) != schemes.end();

    SweepResult result;
    result.axis = axis;
    result.schemes.assign(schemes.begin(), schemes.end());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const NetworkParams params = apply_axis(tmpl, axis, grid[g]);
        QTable table;
        const QTable* table_ptr = nullptr;
        if (wants_nso) {
            RandomStream rng = make_stream(seed, StreamDomain::qtable, g);
            table = build_q_table(params, QTableConfig{}, mc, rng);
            table_ptr = &table;
        }
        double threshold = 0.0;
        if (wants_threshold) {
            const auto tgrid = default_threshold_grid(params);
            threshold = tune_threshold(params, tgrid, mc, seed, g).threshold;
        }
        MultiEstimate multi = estimate_adorp_multi(schemes, params, mc, seed, g,
                                                   keep_contributions, table_ptr, threshold);
        SweepPoint point;
        point.abscissa = grid[g];
        point.estimates = std::move(multi.estimates);
        point.threshold_used = multi.threshold_used;
        point.contributions = std::move(multi.contributions);
        result.points.push_back(std::move(point));
    }
    return result;
}

std::vector<double> upper_bound_curve(double max_so_adorp, std::span<const double> n_bar_a_grid) {
    if (!(max_so_adorp >= 0.0))
        throw std::invalid_argument("upper_bound_curve: max must be >= 0");
    std::vector<double> out;
    out.reserve(n_bar_a_grid.size());
    for (const double n : n_bar_a_grid) out.push_back(max_so_adorp * (1.0 - std::exp(-n)));
    return out;
}

}  // namespace wanet
