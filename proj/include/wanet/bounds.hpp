#pragma once

#include <cstddef>
#include <span>

#include "wanet/geometry.hpp"

namespace wanet {

// Geometry of one tested relay: d = distance probe->candidate, r_a = routing
// zone radius, r_z = threshold zone radius around the candidate.
struct CandidateGeometry {
    double d = 0.0;
    double r_a = 0.0;
    double r_z = 0.0;

    void validate() const;
};

struct BoundTerms {
    double p_z = 1.0;
    double j1 = 0.0;
    double j2 = 0.0;
    double theta_s = 0.0;
};

// View of the probe's local knowledge: neighbor positions plus the channel
// gains to the probe (the probe itself sits at the origin).
struct LocalKnowledge {
    std::span<const NodeSample> neighbors;
};

namespace bounds {

// r_Z = sqrt((alpha-2) / (alpha*pi*lambda*p_tx)).
double threshold_radius(const NetworkParams& params);

// Half-angle of the cone where the threshold zone pokes out of the routing
// zone; 0 when the threshold zone is interior.
double theta_s(const CandidateGeometry& geom);

// |A_Z \ A_R| via the two-circle lens area. Overlap case only.
double b_t_area(const CandidateGeometry& geom);

// The printed closed form for the same area with its stray "x" read as x0.
// Kept for validation output; wrong in the containment sub-case.
double b_t_area_printed(const CandidateGeometry& geom);

// Probability that no interfering transmitter sits inside the candidate's
// threshold zone, given the known neighbors.
double p_zone_free(std::size_t candidate, const LocalKnowledge& knowledge,
                   const NetworkParams& params);

// Expected interference from known neighbors outside the threshold zone.
double jbar1(std::size_t candidate, const LocalKnowledge& knowledge, const NetworkParams& params);

// Distance from the candidate to the routing-zone edge in direction theta.
double zone_edge_radius(double d, double r_a, double theta);

// Cone term of the exterior expectation: 2*theta_s*rho*lambda*p_tx*r_z^(2-alpha)/(alpha-2).
double jbar21(const CandidateGeometry& geom, const NetworkParams& params);

// Quadrature of the exterior integral over [theta_s, 2pi - theta_s].
double jbar22_quadrature(const CandidateGeometry& geom, const NetworkParams& params,
                         double abs_tol = 1e-10, double rel_tol = 1e-10);

// Closed forms for integer path-loss exponents.
double jbar22_closed_alpha3(const CandidateGeometry& geom, const NetworkParams& params);
double jbar22_closed_alpha4(const CandidateGeometry& geom, const NetworkParams& params);

// Literal printed alpha=4 form; its arctan coefficient is off by 2x whenever
// theta_s > 0. Kept for the validate-bounds discrepancy report.
double jbar22_closed_alpha4_printed(const CandidateGeometry& geom, const NetworkParams& params);

// Expected unknown-exterior interference J2 = J21 + J22; closed form for
// alpha in {3,4}, adaptive quadrature otherwise.
double jbar2(const CandidateGeometry& geom, const NetworkParams& params);
double jbar2_quadrature_only(const CandidateGeometry& geom, const NetworkParams& params);

// Incomplete elliptic integral of the second kind in the parameter
// convention: integral of sqrt(1 - m*sin^2(t)) over [0, phi].
double elliptic_e_incomplete(double phi, double m);

BoundTerms bound_terms(std::size_t candidate, const LocalKnowledge& knowledge,
                       const NetworkParams& params);

// Full right-hand side of the lower bound:
// p_Z * r * log2(1 + S / (J1 + J2 + sigma_v2)). Equals the BO routing metric.
double bound_g(std::size_t candidate, const LocalKnowledge& knowledge,
               const NetworkParams& params);

// gamma = rho*(2/alpha)*(alpha*pi*lambda*p_tx*Gamma(1+2/alpha)/(alpha-2))^(alpha/2).
double gamma_const(const NetworkParams& params);

}  // namespace bounds
}  // namespace wanet
