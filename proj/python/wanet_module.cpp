#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wanet/adorp.hpp"
#include "wanet/config.hpp"
#include "wanet/netsim.hpp"
#include "wanet/validate.hpp"

namespace py = pybind11;
using namespace wanet;

namespace {

SchemeId scheme_arg(const std::string& name) {
    const auto id = scheme_from_name(name);
    if (!id) throw py::value_error("unknown scheme: " + name);
    return *id;
}

}  // namespace

PYBIND11_MODULE(_wanet, m) {
    m.doc() = "Relay-selection kernels and experiments for random wireless ad-hoc networks";

    py::class_<NetworkParams>(m, "NetworkParams")
        .def(py::init([](double lambda, double p_tx, double alpha, double rho, double sigma_v2,
                         double bandwidth, double r_a) {
                 NetworkParams p{lambda, p_tx, alpha, rho, sigma_v2, bandwidth, r_a};
                 p.validate();
                 return p;
             }),
             py::arg("lam") = 1.0, py::arg("p_tx") = 0.15, py::arg("alpha") = 4.0,
             py::arg("rho") = 1.0, py::arg("sigma_v2") = 0.0, py::arg("bandwidth") = 1.0,
             py::arg("r_a") = 1.0)
        .def_readwrite("lam", &NetworkParams::lambda)
        .def_readwrite("p_tx", &NetworkParams::p_tx)
        .def_readwrite("alpha", &NetworkParams::alpha)
        .def_readwrite("rho", &NetworkParams::rho)
        .def_readwrite("sigma_v2", &NetworkParams::sigma_v2)
        .def_readwrite("bandwidth", &NetworkParams::bandwidth)
        .def_readwrite("r_a", &NetworkParams::r_a)
        .def("validate", &NetworkParams::validate)
        .def("n_bar_a", &NetworkParams::n_bar_a)
        .def_static("with_n_bar_a", &NetworkParams::with_n_bar_a, py::arg("base"),
                    py::arg("n_bar_a"));

    m.def("mean_nodes_in_zone", &mean_nodes_in_zone);
    m.def("threshold_radius", &bounds::threshold_radius);
    m.def("gamma_const", &bounds::gamma_const);
    m.def("elliptic_e_incomplete", &bounds::elliptic_e_incomplete, py::arg("phi"), py::arg("m"));
    m.def(
        "jbar2",
        [](double d, const NetworkParams& params) {
            const CandidateGeometry geom{d, params.r_a, bounds::threshold_radius(params)};
            return bounds::jbar2(geom, params);
        },
        py::arg("d"), py::arg("params"));
    m.def(
        "jbar2_quadrature",
        [](double d, const NetworkParams& params) {
            const CandidateGeometry geom{d, params.r_a, bounds::threshold_radius(params)};
            return bounds::jbar2_quadrature_only(geom, params);
        },
        py::arg("d"), py::arg("params"));

    m.def(
        "build_q_table",
        [](const NetworkParams& params, std::uint64_t samples, std::size_t points,
           std::uint64_t seed) {
            QTableConfig grid;
            grid.samples = samples;
            grid.points = points;
            McConfig mc;
            RandomStream rng = make_stream(seed, StreamDomain::qtable);
            const QTable table = build_q_table(params, grid, mc, rng);
            return py::make_tuple(table.x, table.q, table.se);
        },
        py::arg("params"), py::arg("samples") = 20000, py::arg("points") = 128,
        py::arg("seed") = 1);

    m.def(
        "estimate_adorp",
        [](const std::string& scheme, const NetworkParams& params, std::uint64_t realizations,
           std::uint32_t so_samples, std::uint64_t seed, unsigned workers) {
            McConfig mc;
            mc.realizations = realizations;
            mc.so_samples = so_samples;
            mc.workers = workers;
            const AdorpEstimate est = estimate_adorp(scheme_arg(scheme), params, mc, seed);
            return py::make_tuple(est.value, est.stderr_);
        },
        py::arg("scheme"), py::arg("params"), py::arg("realizations") = 2000,
        py::arg("so_samples") = 200, py::arg("seed") = 1, py::arg("workers") = 0);

    m.def(
        "run_netsim",
        [](const std::string& scheme, const NetworkParams& params, double area, double n_nodes,
           double mobility_sigma, std::uint64_t slots, double gen_prob, double k_bits,
           std::uint64_t seed) {
            SimConfig cfg;
            cfg.scheme = scheme_arg(scheme);
            cfg.params = params;
            cfg.area = area;
            cfg.n_nodes_mean = n_nodes;
            cfg.mobility_sigma = mobility_sigma;
            cfg.slots = slots;
            cfg.msg_gen_prob = gen_prob;
            cfg.k_bits = k_bits;
            cfg.seed = seed;
            const EerRun run = run_sim(cfg);
            py::dict out;
            out["eer"] = run.eer;
            out["generated"] = run.generated;
            out["delivered"] = run.delivered;
            out["in_flight"] = run.in_flight;
            out["slots"] = run.slots;
            return out;
        },
        py::arg("scheme"), py::arg("params"), py::arg("area") = 1000.0,
        py::arg("n_nodes") = 100.0, py::arg("mobility_sigma") = 2.84,
        py::arg("slots") = 10000, py::arg("gen_prob") = 0.01, py::arg("k_bits") = 20.0,
        py::arg("seed") = 1);

    m.def("parse_config", [](const std::string& text) {
        const ExperimentConfig cfg = parse_config(text);
        return render_config(cfg);
    });
    m.def("paper_figure_config",
          [](int figure) { return render_config(paper_figure_config(figure)); });
}
