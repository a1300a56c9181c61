#include "wanet/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wanet/channel.hpp"
#include "wanet/csv.hpp"

namespace wanet {

double SimConfig::side() const { return area_side > 0.0 ? area_side : std::sqrt(area); }

void SimConfig::validate() const {
    params.validate();
    if (!(side() > 0.0)) throw std::invalid_argument("SimConfig: area must be positive");
    if (!(n_nodes_mean >= 0.0)) throw std::invalid_argument("SimConfig: n_nodes_mean >= 0");
    if (!(mobility_sigma >= 0.0)) throw std::invalid_argument("SimConfig: mobility_sigma >= 0");
    if (slots < 1) throw std::invalid_argument("SimConfig: slots >= 1");
    if (!(msg_gen_prob >= 0.0 && msg_gen_prob <= 1.0))
        throw std::invalid_argument("SimConfig: msg_gen_prob in [0,1]");
    if (!(k_bits > 0.0)) throw std::invalid_argument("SimConfig: k_bits > 0");
    if (2.0 * params.r_a > side())
        throw std::invalid_argument("SimConfig: routing zone diameter exceeds the torus side");
}

double torus_delta(double a, double b, double side) {
    double d = b - a;
    d -= side * std::round(d / side);
    return d;
}

double torus_distance(const Point2& a, const Point2& b, double side) {
    const double dx = torus_delta(a.x, b.x, side);
    const double dy = torus_delta(a.y, b.y, side);
    return std::sqrt(dx * dx + dy * dy);
}

void NetSim::step_mobility(std::vector<NodeState>& nodes, double mobility_sigma, double side,
                           RandomStream& rng) {
    for (auto& node : nodes) {
        double x = node.home.x + mobility_sigma * rng.normal();
        double y = node.home.y + mobility_sigma * rng.normal();
        x -= side * std::floor(x / side);
        y -= side * std::floor(y / side);
        node.position = {x, y};
    }
}

NetSim::NetSim(const SimConfig& config) : NetSim(config, {}) {}

NetSim::NetSim(const SimConfig& config, const std::vector<Point2>& homes)
    : cfg_(config), side_(config.side()),
      rng_(make_stream(config.seed, StreamDomain::netsim, config.stream_tag)) {
    cfg_.validate();
    const std::uint64_t n =
        homes.empty() ? rng_.poisson(cfg_.n_nodes_mean) : homes.size();
    nodes_.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        nodes_[i].id = static_cast<std::uint32_t>(i);
        nodes_[i].home =
            homes.empty() ? Point2{rng_.uniform(0.0, side_), rng_.uniform(0.0, side_)} : homes[i];
        nodes_[i].position = nodes_[i].home;
    }
    step_mobility(nodes_, cfg_.mobility_sigma, side_, rng_);
    if (cfg_.scheme == SchemeId::nso) {
        McConfig mc;
        RandomStream qrng = make_stream(cfg_.seed, StreamDomain::qtable);
        qtable_ = build_q_table(cfg_.params, QTableConfig{}, mc, qrng);
    }
    if (cfg_.scheme == SchemeId::nbo)
        gamma_b_ = 1.0 / (cfg_.params.sigma_v2 + bounds::gamma_const(cfg_.params));
    if (cfg_.scheme == SchemeId::so)
        so_field_.emplace(cfg_.params.lambda * cfg_.params.p_tx, cfg_.params.rho,
                          cfg_.params.alpha, cfg_.params.r_a, auto_r_trunc(cfg_.params, true),
                          true, cfg_.params.r_a);
}

std::optional<std::size_t> NetSim::pick_message(const NodeState& node,
                                                const Point2& relay_pos) const {
    // Progress of the hop for each buffered message: reduction of the
    // distance to its destination. With saturated buffers this matches the
    // hop-projection in the bulk and keeps terminal hops from overshooting
    // the destination. Ties go to the oldest message (buffer front).
    std::optional<std::size_t> best;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < node.buffer.size(); ++b) {
        const Message& msg = messages_[node.buffer[b]];
        const Point2 dst = nodes_[msg.destination].home;
        const double gain = torus_distance(node.position, dst, side_) -
                            torus_distance(relay_pos, dst, side_);
        if (gain > best_gain) {
            best_gain = gain;
            best = b;
        }
    }
    return best;
}

std::uint64_t NetSim::inject_message(std::uint32_t src, std::uint32_t dst) {
    if (src >= nodes_.size() || dst >= nodes_.size() || src == dst)
        throw std::invalid_argument("inject_message: bad node ids");
    Message msg;
    msg.id = messages_.size();
    msg.source = src;
    msg.destination = dst;
    msg.size_k = cfg_.k_bits;
    msg.origin_distance = torus_distance(nodes_[src].position, nodes_[dst].position, side_);
    msg.holder = src;
    msg.created_slot = slot_;
    nodes_[src].buffer.push_back(msg.id);
    messages_.push_back(msg);
    ++generated_;
    return msg.id;
}

void NetSim::generate_messages() {
    const std::size_t n = nodes_.size();
    if (n < 2) return;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rng_.bernoulli(cfg_.msg_gen_prob)) continue;
        std::size_t dst = static_cast<std::size_t>(rng_.next_unit() * (n - 1));
        if (dst >= n - 1) dst = n - 2;
        if (dst >= i) ++dst;  // uniform over the other nodes
        Message msg;
        msg.id = messages_.size();
        msg.source = static_cast<std::uint32_t>(i);
        msg.destination = static_cast<std::uint32_t>(dst);
        msg.size_k = cfg_.k_bits;
        msg.origin_distance = torus_distance(nodes_[i].position, nodes_[dst].position, side_);
        msg.holder = static_cast<std::uint32_t>(i);
        msg.created_slot = slot_;
        nodes_[i].buffer.push_back(msg.id);
        messages_.push_back(msg);
        ++generated_;
    }
}

void NetSim::run_slot() {
    const std::size_t n = nodes_.size();
    const NetworkParams& pp = cfg_.params;

    // (1) ALOHA: nodes with traffic transmit with probability p_tx.
    std::vector<std::uint32_t> transmitters;
    std::vector<std::uint8_t> is_tx(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (nodes_[i].buffer.empty()) continue;
        if (rng_.bernoulli(pp.p_tx)) {
            is_tx[i] = 1;
            nodes_[i].transmit_count += 1;
            transmitters.push_back(static_cast<std::uint32_t>(i));
        }
    }

    // Pairwise slot fading, drawn lazily: metric gains double as the served
    // link's reception gain (channel reciprocity), interferers get fresh draws.
    std::vector<double> fading(transmitters.size() * n,
                               std::numeric_limits<double>::quiet_NaN());
    auto pair_fading = [&](std::size_t tx_slot, std::size_t node) -> double {
        double& w = fading[tx_slot * n + node];
        if (std::isnan(w)) w = rng_.exponential();
        return w;
    };

    // (2)-(3) Relay selection against the pre-slot snapshot, then the buffered
    // message whose destination direction best matches the hop.
    struct Transmission {
        std::uint32_t tx;
        std::uint32_t relay;
        std::uint64_t msg;
        double signal;  // received power of the served link at the relay
    };
    std::vector<Transmission> sends;
    std::vector<NodeSample> scratch;
    std::vector<std::uint32_t> scratch_ids;
    std::vector<CandidateEvaluation> evals;
    for (std::size_t t = 0; t < transmitters.size(); ++t) {
        const std::uint32_t tx = transmitters[t];
        scratch.clear();
        scratch_ids.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == tx) continue;
            const double dx = torus_delta(nodes_[tx].position.x, nodes_[j].position.x, side_);
            const double dy = torus_delta(nodes_[tx].position.y, nodes_[j].position.y, side_);
            if (dx * dx + dy * dy > pp.r_a * pp.r_a) continue;
            scratch.push_back({{dx, dy}, pair_fading(t, j)});
            scratch_ids.push_back(static_cast<std::uint32_t>(j));
        }
        if (scratch.empty()) continue;
        const LocalKnowledge knowledge{scratch};
        evals.resize(scratch.size());
        switch (cfg_.scheme) {
            case SchemeId::so: {
                ProbeRealization real;
                real.neighbors.assign(scratch.begin(), scratch.end());
                real.r_trunc = so_field_->r_trunc();
                evals = so_metrics_all(real, pp, cfg_.so_samples, *so_field_, rng_);
                break;
            }
            case SchemeId::bo:
                for (std::size_t k = 0; k < scratch.size(); ++k)
                    evals[k] = metric_bo(k, knowledge, pp);
                break;
            case SchemeId::nso:
                for (std::size_t k = 0; k < scratch.size(); ++k)
                    evals[k] = metric_nso(k, knowledge, pp, qtable_);
                break;
            case SchemeId::nbo:
                for (std::size_t k = 0; k < scratch.size(); ++k)
                    evals[k] = metric_nbo(k, knowledge, pp, gamma_b_);
                break;
            case SchemeId::nn:
                for (std::size_t k = 0; k < scratch.size(); ++k)
                    evals[k] = metric_nn(k, knowledge);
                break;
            case SchemeId::threshold:
                for (std::size_t k = 0; k < scratch.size(); ++k)
                    evals[k] = metric_threshold(k, knowledge, pp, cfg_.threshold);
                break;
        }
        const auto sel = select_relay(evals);
        if (!sel) continue;
        const std::uint32_t relay = scratch_ids[*sel];
        const auto buf_idx = pick_message(nodes_[tx], nodes_[relay].position);
        if (!buf_idx) continue;
        const double r = norm(scratch[*sel].pos);
        const double s = pp.rho * pathloss(r * r, pp.alpha) * scratch[*sel].w;
        sends.push_back({tx, relay, nodes_[tx].buffer[*buf_idx], s});
    }

    // (4) Mutual-information accrual with all simultaneous senders interfering.
    const double before_weight = delivered_weight_;
    std::vector<std::uint64_t> completed;
    for (const Transmission& send : sends) {
        if (is_tx[send.relay]) continue;  // a transmitting relay hears nothing
        double total = 0.0;
        for (std::size_t t = 0; t < transmitters.size(); ++t) {
            const std::uint32_t other = transmitters[t];
            if (other == send.relay) continue;
            const double d =
                torus_distance(nodes_[other].position, nodes_[send.relay].position, side_);
            if (other == send.tx) continue;  // served link counted via send.signal
            total += pp.rho * pathloss(d * d, pp.alpha) * pair_fading(t, send.relay);
        }
        const double denom = total + pp.sigma_v2;
        Message& msg = messages_[send.msg];
        double mi;
        if (denom > 0.0) {
            mi = pp.bandwidth * std::log2(1.0 + send.signal / denom);
        } else {
            mi = msg.size_k;  // lone transmitter in a noiseless slot decodes outright
        }
        msg.accumulated_mi = std::min(msg.size_k, msg.accumulated_mi + mi);
        if (msg.accumulated_mi >= msg.size_k) completed.push_back(send.msg);
    }

    // (5) Completed hops move messages in transmitter-id order.
    for (const Transmission& send : sends) {
        if (std::find(completed.begin(), completed.end(), send.msg) == completed.end()) continue;
        Message& msg = messages_[send.msg];
        auto& buf = nodes_[send.tx].buffer;
        buf.erase(std::find(buf.begin(), buf.end(), send.msg));
        msg.accumulated_mi = 0.0;
        msg.hops += 1;
        msg.holder = send.relay;
        if (send.relay == msg.destination) {
            msg.delivered = true;
            ++delivered_;
            delivered_weight_ += msg.origin_distance * msg.size_k;
        } else {
            nodes_[send.relay].buffer.push_back(send.msg);
        }
    }

    // (6) Mobility, then (7) traffic generation.
    step_mobility(nodes_, cfg_.mobility_sigma, side_, rng_);
    generate_messages();
    if (trace_enabled) trace_.push_back(delivered_weight_ - before_weight);
    ++slot_;
}

EerRun NetSim::result() const {
    EerRun out;
    out.config_fingerprint = params_fingerprint(cfg_.params);
    out.config_fingerprint += ";scheme=" + std::string(scheme_name(cfg_.scheme));
    out.config_fingerprint += ";side=" + format_double(side_);
    out.config_fingerprint += ";slots=" + format_u64(cfg_.slots);
    out.generated = generated_;
    out.delivered = delivered_;
    std::uint64_t in_flight = 0;
    for (const auto& node : nodes_) in_flight += node.buffer.size();
    out.in_flight = in_flight;
    out.slots = slot_;
    out.seed = cfg_.seed;
    out.p_tx = cfg_.params.p_tx;
    const double area = side_ * side_;
    const double tt = static_cast<double>(slot_);
    out.eer = tt > 0.0 ? delivered_weight_ / (tt * area * cfg_.params.bandwidth) : 0.0;
    out.slot_delivered_bits_distance = trace_;
    return out;
}

EerRun run_sim(const SimConfig& config) {
    NetSim sim(config);
    for (std::uint64_t s = 0; s < config.slots; ++s) sim.run_slot();
    return sim.result();
}

}  // namespace wanet
