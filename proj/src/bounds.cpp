#include "wanet/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wanet/channel.hpp"
#include "wanet/quadrature.hpp"

namespace wanet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAcosSlack = 1e-9;

double safe_acos(double x) {
    if (x > 1.0) {
        if (x > 1.0 + kAcosSlack) throw std::domain_error("acos argument above 1 beyond tolerance");
        return 0.0;
    }
    if (x < -1.0) {
        if (x < -1.0 - kAcosSlack)
            throw std::domain_error("acos argument below -1 beyond tolerance");
        return kPi;
    }
    return std::acos(x);
}

// Intersection area of two disks: radius ra centered at the origin, radius rz
// centered d away.
double lens_area(double ra, double rz, double d) {
    if (d >= ra + rz) return 0.0;
    if (d + rz <= ra) return kPi * rz * rz;
    if (d + ra <= rz) return kPi * ra * ra;
    const double d2 = d * d;
    const double a2 = ra * ra;
    const double z2 = rz * rz;
    const double phi_a = safe_acos((d2 + a2 - z2) / (2.0 * d * ra));
    const double phi_z = safe_acos((d2 + z2 - a2) / (2.0 * d * rz));
    const double root = std::sqrt(std::max(
        0.0, (ra + rz + d) * (-d + ra + rz) * (d - ra + rz) * (d + ra - rz)));
    return a2 * phi_a + z2 * phi_z - 0.5 * root;
}

}  // namespace

void CandidateGeometry::validate() const {
    if (!(d > 0.0 && d <= r_a)) throw std::invalid_argument("CandidateGeometry: need 0 < d <= r_a");
    if (!(r_z > 0.0)) throw std::invalid_argument("CandidateGeometry: need r_z > 0");
}

namespace bounds {

double threshold_radius(const NetworkParams& params) {
    if (!(params.alpha > 2.0)) throw std::invalid_argument("threshold_radius: alpha must be > 2");
    return std::sqrt((params.alpha - 2.0) / (params.alpha * kPi * params.lambda * params.p_tx));
}

double theta_s(const CandidateGeometry& geom) {
    geom.validate();
    if (geom.r_z + geom.d <= geom.r_a) return 0.0;
    const double num = geom.r_a * geom.r_a - geom.r_z * geom.r_z - geom.d * geom.d;
    return safe_acos(num / (2.0 * geom.r_z * geom.d));
}

double b_t_area(const CandidateGeometry& geom) {
    geom.validate();
    if (geom.r_z + geom.d <= geom.r_a)
        throw std::invalid_argument("b_t_area: threshold zone is interior");
    return kPi * geom.r_z * geom.r_z - lens_area(geom.r_a, geom.r_z, geom.d);
}

double b_t_area_printed(const CandidateGeometry& geom) {
    geom.validate();
    const double d = geom.d, ra = geom.r_a, rz = geom.r_z;
    const double x0 = (ra * ra + d * d - rz * rz) / (2.0 * d);
    const double s1 = std::sqrt(std::max(0.0, rz * rz - (d - x0) * (d - x0)));
    const double s2 = std::sqrt(std::max(0.0, ra * ra - x0 * x0));
    return rz * rz * std::atan((x0 - d) / s1) + (x0 - d) * s1 - ra * ra * std::atan(x0 / s2) -
           x0 * s2;
}

double p_zone_free(std::size_t candidate, const LocalKnowledge& knowledge,
                   const NetworkParams& params) {
    const auto& nb = knowledge.neighbors;
    if (candidate >= nb.size()) throw std::out_of_range("p_zone_free: candidate index");
    const double r_z = threshold_radius(params);
    const Point2 c = nb[candidate].pos;
    int n_z = 0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
        if (i == candidate) continue;
        if (distance(nb[i].pos, c) <= r_z) ++n_z;
    }
    const double known = std::pow(1.0 - params.p_tx, n_z);
    const double d = norm(c);
    if (d + r_z < params.r_a) return known;
    CandidateGeometry geom{d, params.r_a, r_z};
    const double b_t = (d + r_z <= params.r_a) ? 0.0 : b_t_area(geom);
    return std::exp(-params.lambda * params.p_tx * b_t) * known;
}

double jbar1(std::size_t candidate, const LocalKnowledge& knowledge,
             const NetworkParams& params) {
    const auto& nb = knowledge.neighbors;
    if (candidate >= nb.size()) throw std::out_of_range("jbar1: candidate index");
    const double r_z = threshold_radius(params);
    const Point2 c = nb[candidate].pos;
    double sum = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
        if (i == candidate) continue;
        const double r = distance(nb[i].pos, c);
        if (r > r_z) sum += pathloss(r * r, params.alpha);
    }
    return params.p_tx * params.rho * sum;
}

double zone_edge_radius(double d, double r_a, double theta) {
    const double s = d * std::sin(theta);
    return -d * std::cos(theta) + std::sqrt(r_a * r_a - s * s);
}

double jbar21(const CandidateGeometry& geom, const NetworkParams& params) {
    const double ts = theta_s(geom);
    if (ts == 0.0) return 0.0;
    return 2.0 * ts * params.rho * params.lambda * params.p_tx *
           std::pow(geom.r_z, 2.0 - params.alpha) / (params.alpha - 2.0);
}

double jbar22_quadrature(const CandidateGeometry& geom, const NetworkParams& params,
                         double abs_tol, double rel_tol) {
    const double ts = theta_s(geom);
    const double a = params.alpha;
    const double d = geom.d, ra = geom.r_a;
    const auto integrand = [d, ra, a](double th) {
        return std::pow(zone_edge_radius(d, ra, th), 2.0 - a);
    };
    // Symmetric about pi; integrating the half range halves the work.
    const QuadResult half = integrate_adaptive(integrand, ts, kPi, abs_tol * 0.5, rel_tol);
    return params.rho * params.lambda * params.p_tx / (a - 2.0) * 2.0 * half.value;
}

double jbar22_closed_alpha3(const CandidateGeometry& geom, const NetworkParams& params) {
    const double ts = theta_s(geom);
    const double d = geom.d, ra = geom.r_a;
    const double m = (d * d) / (ra * ra);
    const double ell = elliptic_e_incomplete(2.0 * kPi - ts, m) - elliptic_e_incomplete(ts, m);
    const double denom = ra * ra - d * d;
    return params.rho * params.lambda * params.p_tx *
           (-2.0 * d * std::sin(ts) / denom + ra * ell / denom);
}

double jbar22_closed_alpha4(const CandidateGeometry& geom, const NetworkParams& params) {
    const double ts = theta_s(geom);
    const double d = geom.d, ra = geom.r_a;
    const double A = ra * ra, D = d * d;
    const double s = std::sin(ts);
    const double num = -4.0 * d * s * std::sqrt(A - D * s * s) -
                       4.0 * A * std::asin(d * s / ra) + 4.0 * A * (kPi - ts) -
                       2.0 * D * std::sin(2.0 * ts);
    return params.rho * params.lambda * params.p_tx * num / (4.0 * (A - D) * (A - D));
}

double jbar22_closed_alpha4_printed(const CandidateGeometry& geom, const NetworkParams& params) {
    const double ts = theta_s(geom);
    const double d = geom.d, ra = geom.r_a;
    const double A = ra * ra, D = d * d;
    const double c2 = std::cos(2.0 * ts);
    const double num = -2.0 * d * std::sin(ts) * std::sqrt(4.0 * A + 2.0 * D * c2 - 2.0 * D) -
                       2.0 * A * std::atan(std::numbers::sqrt2 * d * std::sin(ts) /
                                           std::sqrt(2.0 * A + D * c2 - D)) +
                       4.0 * A * (kPi - ts) - 2.0 * D * std::sin(2.0 * ts);
    return params.rho * params.lambda * params.p_tx * num / (4.0 * (A - D) * (A - D));
}

double jbar2(const CandidateGeometry& geom, const NetworkParams& params) {
    const double j21 = jbar21(geom, params);
    if (params.alpha == 3.0) return j21 + jbar22_closed_alpha3(geom, params);
    if (params.alpha == 4.0) return j21 + jbar22_closed_alpha4(geom, params);
    return j21 + jbar22_quadrature(geom, params);
}

double jbar2_quadrature_only(const CandidateGeometry& geom, const NetworkParams& params) {
    return jbar21(geom, params) + jbar22_quadrature(geom, params);
}

double elliptic_e_incomplete(double phi, double m) {
    if (!(m >= 0.0 && m <= 1.0))
        throw std::invalid_argument("elliptic_e_incomplete: m must be in [0,1]");
    if (phi == 0.0) return 0.0;
    const auto integrand = [m](double t) {
        const double s = std::sin(t);
        return std::sqrt(1.0 - m * s * s);
    };
    const double sign = phi < 0.0 ? -1.0 : 1.0;
    const QuadResult q = integrate_adaptive(integrand, 0.0, std::abs(phi), 1e-13, 1e-13);
    return sign * q.value;
}

BoundTerms bound_terms(std::size_t candidate, const LocalKnowledge& knowledge,
                       const NetworkParams& params) {
    const auto& nb = knowledge.neighbors;
    if (candidate >= nb.size()) throw std::out_of_range("bound_terms: candidate index");
    CandidateGeometry geom{norm(nb[candidate].pos), params.r_a, threshold_radius(params)};
    BoundTerms out;
    out.theta_s = theta_s(geom);
    out.p_z = p_zone_free(candidate, knowledge, params);
    out.j1 = jbar1(candidate, knowledge, params);
    out.j2 = jbar2(geom, params);
    return out;
}

double bound_g(std::size_t candidate, const LocalKnowledge& knowledge,
               const NetworkParams& params) {
    const auto& nb = knowledge.neighbors;
    const BoundTerms terms = bound_terms(candidate, knowledge, params);
    const double r = norm(nb[candidate].pos);
    const double s = signal_power(params.rho, r, params.alpha, nb[candidate].w);
    const double denom = terms.j1 + terms.j2 + params.sigma_v2;
    if (!(denom > 0.0)) throw std::domain_error("bound_g: zero interference-plus-noise");
    return terms.p_z * r * std::log2(1.0 + s / denom);
}

double gamma_const(const NetworkParams& params) {
    if (!(params.alpha > 2.0)) throw std::invalid_argument("gamma_const: alpha must be > 2");
    const double a = params.alpha;
    const double inner =
        a * kPi * params.lambda * params.p_tx * std::tgamma(1.0 + 2.0 / a) / (a - 2.0);
    return params.rho * (2.0 / a) * std::pow(inner, a / 2.0);
}

}  // namespace bounds
}  // namespace wanet
