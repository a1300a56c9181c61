#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "wanet/rng.hpp"

namespace wanet {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double norm2(const Point2& p) { return p.x * p.x + p.y * p.y; }
inline double norm(const Point2& p) { return std::sqrt(norm2(p)); }
inline double distance(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

// Physical and MAC constants of the network model. alpha > 2 keeps the
// far-field interference integrable.
struct NetworkParams {
    double lambda = 1.0;    // node density (nodes per unit area)
    double p_tx = 0.15;     // ALOHA transmit probability
    double alpha = 4.0;     // path-loss exponent
    double rho = 1.0;       // transmit power
    double sigma_v2 = 0.0;  // noise power
    double bandwidth = 1.0; // Hz; results are reported normalized by it
    double r_a = 1.0;       // routing-zone radius

    void validate() const;
    double n_bar_a() const { return lambda * 3.14159265358979323846 * r_a * r_a; }

    static NetworkParams with_n_bar_a(NetworkParams base, double n_bar_a);
};

// Expected node count in the routing zone: lambda * pi * r_a^2.
double mean_nodes_in_zone(const NetworkParams& params);

// Homogeneous PPP on the annulus r_inner <= r < r_outer: Poisson count,
// radius by inverse CDF sqrt(r1^2 + u*(r2^2-r1^2)), uniform angle.
std::vector<Point2> sample_ppp_annulus(double density, double r_inner, double r_outer,
                                       RandomStream& rng);

// A node's position together with one unit-mean fading draw.
struct NodeSample {
    Point2 pos;
    double w = 1.0;
};

// One neighborhood realization around a probe transmitter at the origin.
// neighbors carry the known channel gains to the probe (the local knowledge);
// background nodes live in (r_a, r_trunc] and carry the slot fading used when
// a selected relay listens to them.
struct ProbeRealization {
    std::vector<NodeSample> neighbors;
    std::vector<NodeSample> background;
    double r_trunc = 0.0;
};

ProbeRealization sample_probe_realization(const NetworkParams& params, double r_trunc,
                                          RandomStream& rng);

}  // namespace wanet
