#include "wanet/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wanet/bounds.hpp"
#include "wanet/channel.hpp"
#include "wanet/quadrature.hpp"

namespace wanet {

namespace {
constexpr double kPi = std::numbers::pi;

// Angular average of ||x - c e_1||^(-alpha) over the circle of radius s.
double ring_kernel(double s, double c, double alpha) {
    const auto f = [s, c, alpha](double th) {
        const double d2 = s * s + c * c - 2.0 * s * c * std::cos(th);
        return std::pow(d2, -0.5 * alpha);
    };
    return 2.0 * integrate_adaptive(f, 0.0, kPi, 1e-14, 1e-12).value;
}
}  // namespace

double ExteriorField::tail_mean_exact(double c, double r, double alpha) {
    if (!(r > c)) throw std::invalid_argument("tail_mean_exact: receiver outside the disk");
    if (alpha == 4.0) {
        const double g = r * r - c * c;
        return kPi * (1.0 / g + c * c / (g * g));
    }
    const double isotropic = 2.0 * kPi * std::pow(r, 2.0 - alpha) / (alpha - 2.0);
    if (c == 0.0) return isotropic;
    // Off-center correction, integrated in t = r/s so the domain is finite.
    const auto f = [c, r, alpha](double t) {
        const double s = r / t;
        const double diff = ring_kernel(s, c, alpha) - 2.0 * kPi * std::pow(s, -alpha);
        return r * r / (t * t * t) * diff;
    };
    const double corr = integrate_adaptive(f, 0.0, 1.0, 1e-12, 1e-9).value;
    return isotropic + corr;
}

ExteriorField::ExteriorField(double density, double rho, double alpha, double r_inner,
                             double r_trunc, bool tail_compensation, double receiver_c_max,
                             std::size_t tail_table_points)
    : density_(density),
      rho_(rho),
      alpha_(alpha),
      r_inner_(r_inner),
      r_trunc_(r_trunc),
      tail_comp_(tail_compensation) {
    if (!(density >= 0.0)) throw std::invalid_argument("ExteriorField: density must be >= 0");
    if (!(r_trunc > r_inner) || !(r_inner >= 0.0))
        throw std::invalid_argument("ExteriorField: need 0 <= r_inner < r_trunc");
    if (!(receiver_c_max >= 0.0) || !(receiver_c_max < r_trunc))
        throw std::invalid_argument("ExteriorField: receiver_c_max must be in [0, r_trunc)");
    if (tail_table_points < 2 && receiver_c_max > 0.0)
        throw std::invalid_argument("ExteriorField: tail table needs at least 2 points");
    mean_count_ = density * kPi * (r_trunc * r_trunc - r_inner * r_inner);
    if (tail_comp_ && density > 0.0) {
        const std::size_t n = receiver_c_max == 0.0 ? 1 : tail_table_points;
        tail_c_.resize(n);
        tail_v_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double c = n == 1 ? 0.0 : receiver_c_max * static_cast<double>(i) /
                                                static_cast<double>(n - 1);
            tail_c_[i] = c;
            tail_v_[i] = density * rho * tail_mean_exact(c, r_trunc, alpha);
        }
    }
}

double ExteriorField::tail_mean(double c) const {
    if (!tail_comp_ || tail_v_.empty()) return 0.0;
    if (tail_v_.size() == 1) return tail_v_[0];
    const double c_max = tail_c_.back();
    if (c >= c_max) return tail_v_.back();
    if (c <= 0.0) return tail_v_.front();
    const double step = c_max / static_cast<double>(tail_c_.size() - 1);
    const std::size_t k = std::min(tail_c_.size() - 2, static_cast<std::size_t>(c / step));
    const double t = (c - tail_c_[k]) / step;
    return tail_v_[k] * (1.0 - t) + tail_v_[k + 1] * t;
}

void ExteriorField::add_sample(std::span<const Point2> receivers, std::span<double> j_accum,
                               RandomStream& rng, const Point2* exclude_center,
                               double exclude_radius) const {
    const std::uint64_t n = rng.poisson(mean_count_);
    const double lo2 = r_inner_ * r_inner_;
    const double hi2 = r_trunc_ * r_trunc_;
    const double excl2 = exclude_radius * exclude_radius;
    for (std::uint64_t k = 0; k < n; ++k) {
        const double r = std::sqrt(lo2 + rng.next_unit() * (hi2 - lo2));
        const double th = rng.uniform(0.0, 2.0 * kPi);
        const Point2 p{r * std::cos(th), r * std::sin(th)};
        const double w = rng.exponential();
        if (exclude_center != nullptr) {
            const double dx = p.x - exclude_center->x;
            const double dy = p.y - exclude_center->y;
            if (dx * dx + dy * dy <= excl2) continue;
        }
        for (std::size_t i = 0; i < receivers.size(); ++i) {
            const double dx = p.x - receivers[i].x;
            const double dy = p.y - receivers[i].y;
            j_accum[i] += rho_ * pathloss(dx * dx + dy * dy, alpha_) * w;
        }
    }
    for (std::size_t i = 0; i < receivers.size(); ++i)
        j_accum[i] += tail_mean(norm(receivers[i]));
}

double auto_r_trunc(const NetworkParams& params, bool tail_compensation, double budget) {
    const double r_z = bounds::threshold_radius(params);
    if (tail_compensation)
        return std::max(2.5 * params.r_a, params.r_a + 4.0 * r_z);
    return std::max(2.5 * params.r_a,
                    r_z * std::pow(1.0 / budget, 1.0 / (params.alpha - 2.0)));
}

}  // namespace wanet
