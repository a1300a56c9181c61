#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wanet/schemes.hpp"

namespace wanet {

struct Message {
    std::uint64_t id = 0;
    std::uint32_t source = 0;
    std::uint32_t destination = 0;
    double size_k = 20.0;          // bits per message (normalized by B*T)
    double origin_distance = 0.0;  // source-destination distance at creation
    std::uint32_t holder = 0;
    double accumulated_mi = 0.0;   // toward the current hop
    std::uint32_t hops = 0;
    std::uint64_t created_slot = 0;
    bool delivered = false;
};

struct NodeState {
    std::uint32_t id = 0;
    Point2 home;
    Point2 position;
    std::vector<std::uint64_t> buffer;  // message ids, oldest first
    std::uint64_t transmit_count = 0;
};

struct SimConfig {
    double area_side = 0.0;        // torus square side; 0 derives it from area
    double area = 1000.0;          // used when area_side == 0
    double n_nodes_mean = 100.0;
    double mobility_sigma = 2.84;  // per-axis displacement std around home
    std::uint64_t slots = 100000;
    double msg_gen_prob = 0.01;    // per node per slot
    double k_bits = 20.0;          // K in units of B*T
    SchemeId scheme = SchemeId::nbo;
    NetworkParams params;
    std::uint64_t seed = 1;
    std::uint64_t stream_tag = 0;    // distinguishes runs sharing one seed
    std::uint32_t so_samples = 100;  // reduced inner MC when scheme == SO
    double threshold = 0.0;          // threshold scheme parameter

    double side() const;
    void validate() const;
};

struct EerRun {
    std::string config_fingerprint;
    double eer = 0.0;
    std::uint64_t generated = 0;
    std::uint64_t delivered = 0;
    std::uint64_t in_flight = 0;
    std::uint64_t slots = 0;
    std::uint64_t seed = 0;
    double p_tx = 0.0;
    std::vector<double> slot_delivered_bits_distance;  // optional per-slot trace
};

// Torus helpers.
double torus_delta(double a, double b, double side);
double torus_distance(const Point2& a, const Point2& b, double side);

struct NetSim {
    explicit NetSim(const SimConfig& config);
    // Fixed home locations instead of the Poisson draw (scenario tests).
    NetSim(const SimConfig& config, const std::vector<Point2>& homes);

    void run_slot();
    EerRun result() const;

    // Queues a message at src's buffer, destination dst; returns its id.
    std::uint64_t inject_message(std::uint32_t src, std::uint32_t dst);

    // Redraws every node position around its home (i.i.d. mobility).
    static void step_mobility(std::vector<NodeState>& nodes, double mobility_sigma, double side,
                              RandomStream& rng);

    const std::vector<NodeState>& nodes() const { return nodes_; }
    const std::vector<Message>& messages() const { return messages_; }
    std::uint64_t generated() const { return generated_; }
    std::uint64_t delivered() const { return delivered_; }
    double delivered_weight() const { return delivered_weight_; }
    std::uint64_t slot() const { return slot_; }

    bool trace_enabled = false;

private:
    void generate_messages();
    std::optional<std::size_t> pick_message(const NodeState& node, const Point2& relay_pos) const;

    SimConfig cfg_;
    double side_;
    std::vector<NodeState> nodes_;
    std::vector<Message> messages_;  // index by id; delivered messages stay for bookkeeping
    std::optional<ExteriorField> so_field_;  // cached inner-MC exterior for the SO scheme
    RandomStream rng_;
    std::uint64_t generated_ = 0;
    std::uint64_t delivered_ = 0;
    double delivered_weight_ = 0.0;  // sum of L * K over delivered messages
    std::uint64_t slot_ = 0;
    QTable qtable_;  // built lazily for the NSO scheme
    double gamma_b_ = 0.0;
    std::vector<double> trace_;
};

EerRun run_sim(const SimConfig& config);

}  // namespace wanet
