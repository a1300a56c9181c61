#include "wanet/geometry.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace wanet {

void NetworkParams::validate() const {
    std::string errors;
    auto fail = [&errors](const char* msg) {
        if (!errors.empty()) errors += "; ";
        errors += msg;
    };
    if (!(lambda > 0.0)) fail("lambda must be > 0");
    if (!(p_tx > 0.0 && p_tx < 1.0)) fail("p_tx must be in (0,1)");
    if (!(alpha > 2.0)) fail("alpha must be > 2");
    if (!(rho > 0.0)) fail("rho must be > 0");
    if (!(sigma_v2 >= 0.0)) fail("sigma_v2 must be >= 0");
    if (!(bandwidth > 0.0)) fail("bandwidth must be > 0");
    if (!(r_a > 0.0)) fail("r_a must be > 0");
    if (!errors.empty()) throw std::invalid_argument("NetworkParams: " + errors);
}

NetworkParams NetworkParams::with_n_bar_a(NetworkParams base, double n_bar_a) {
    if (!(n_bar_a > 0.0)) throw std::invalid_argument("n_bar_a must be > 0");
    base.r_a = std::sqrt(n_bar_a / (base.lambda * std::numbers::pi));
    return base;
}

double mean_nodes_in_zone(const NetworkParams& params) {
    if (!(params.lambda >= 0.0) || !(params.r_a >= 0.0))
        throw std::invalid_argument("mean_nodes_in_zone: negative lambda or r_a");
    return params.lambda * std::numbers::pi * params.r_a * params.r_a;
}

std::vector<Point2> sample_ppp_annulus(double density, double r_inner, double r_outer,
                                       RandomStream& rng) {
    if (!(density >= 0.0)) throw std::invalid_argument("sample_ppp_annulus: density must be >= 0");
    if (!(r_inner >= 0.0) || !(r_outer >= r_inner))
        throw std::invalid_argument("sample_ppp_annulus: need 0 <= r_inner <= r_outer");
    const double lo2 = r_inner * r_inner;
    const double hi2 = r_outer * r_outer;
    const double area = std::numbers::pi * (hi2 - lo2);
    const std::uint64_t n = rng.poisson(density * area);
    std::vector<Point2> pts;
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double r = std::sqrt(lo2 + rng.next_unit() * (hi2 - lo2));
        const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
        pts.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return pts;
}

ProbeRealization sample_probe_realization(const NetworkParams& params, double r_trunc,
                                          RandomStream& rng) {
    params.validate();
    if (!(r_trunc >= params.r_a))
        throw std::invalid_argument("sample_probe_realization: r_trunc must be >= r_a");
    ProbeRealization out;
    out.r_trunc = r_trunc;
    for (const Point2& p : sample_ppp_annulus(params.lambda, 0.0, params.r_a, rng))
        out.neighbors.push_back({p, rng.exponential()});
    for (const Point2& p : sample_ppp_annulus(params.lambda, params.r_a, r_trunc, rng))
        out.background.push_back({p, rng.exponential()});
    return out;
}

}  // namespace wanet
