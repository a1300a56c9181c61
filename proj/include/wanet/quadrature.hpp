#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wanet {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t panels = 0;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1] (abscissa, gauss w, kronrod w).
inline constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <typename Fn>
void g7k15(const Fn& f, double a, double b, double& k15, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double y0 = f(mid);
    double g7 = kG7K15[0][1] * y0;
    double k = kG7K15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kG7K15[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kG7K15[i][1] * yi;
        k += kG7K15[i][2] * yi;
    }
    g7 *= half;
    k *= half;
    k15 = k;
    err = std::abs(k - g7);
}

}  // namespace detail

// Globally adaptive bisection on [a, b]; splits the panel with the largest
// error until abs+rel tolerance is met or the panel limit trips.
template <typename Fn>
QuadResult integrate_adaptive(const Fn& f, double a, double b, double abs_tol = 1e-10,
                              double rel_tol = 1e-10, std::size_t max_panels = 10000) {
    struct Panel {
        double a, b, value, error;
    };
    std::vector<Panel> panels;
    double v0, e0;
    detail::g7k15(f, a, b, v0, e0);
    panels.push_back({a, b, v0, e0});
    while (true) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (err <= abs_tol || err <= rel_tol * std::abs(total))
            return {total, err, panels.size()};
        if (panels.size() >= max_panels)
            throw QuadratureError("integrate_adaptive: no convergence after " +
                                  std::to_string(panels.size()) + " panels on [" +
                                  std::to_string(a) + "," + std::to_string(b) +
                                  "], error estimate " + std::to_string(err));
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b))
            throw QuadratureError("integrate_adaptive: panel collapsed at x=" +
                                  std::to_string(p.a) + " with error " +
                                  std::to_string(p.error));
        Panel left{p.a, mid, 0.0, 0.0}, right{mid, p.b, 0.0, 0.0};
        detail::g7k15(f, left.a, left.b, left.value, left.error);
        detail::g7k15(f, right.a, right.b, right.value, right.error);
        panels[worst] = left;
        panels.push_back(right);
    }
}

}  // namespace wanet
