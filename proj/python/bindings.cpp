#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "confmac/cme.hpp"
#include "confmac/commands.hpp"
#include "confmac/gap.hpp"
#include "confmac/gaussian.hpp"
#include "confmac/info.hpp"

namespace py = pybind11;
using namespace confmac;

namespace {

py::dict report(const GapReport& r) {
  py::dict d;
  d["bound"] = r.bound;
  d["outer"] = r.outer;
  d["achievable"] = r.achievable;
  d["gap"] = r.gap;
  d["cap"] = r.cap;
  d["case"] = r.case_label;
  d["pass"] = r.pass;
  return d;
}

GridSpec grid_of(std::size_t n) {
  GridSpec g;
  g.power_points = n;
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conferencing multiple-access channel regions";

  m.def("capacity_fn", &capacity_fn, py::arg("x"));

  py::class_<GaussianCmChannel>(m, "GaussianChannel")
      .def(py::init([](double g11, double g12, double g21, double g22, double p1, double p2, double c12, double c21) {
             GaussianCmChannel ch{g11, g12, g21, g22, p1, p2, c12, c21};
             ch.validate();
             return ch;
           }),
           py::arg("g11"), py::arg("g12"), py::arg("g21"), py::arg("g22"), py::arg("p1"), py::arg("p2"),
           py::arg("c12") = 0.0, py::arg("c21") = 0.0)
      .def_readwrite("g11", &GaussianCmChannel::g11)
      .def_readwrite("g12", &GaussianCmChannel::g12)
      .def_readwrite("g21", &GaussianCmChannel::g21)
      .def_readwrite("g22", &GaussianCmChannel::g22)
      .def_readwrite("p1", &GaussianCmChannel::p1)
      .def_readwrite("p2", &GaussianCmChannel::p2)
      .def_readwrite("c12", &GaussianCmChannel::c12)
      .def_readwrite("c21", &GaussianCmChannel::c21);

  py::class_<BoundSet>(m, "BoundSet")
      .def_readonly("b1", &BoundSet::b1)
      .def_readonly("b2", &BoundSet::b2)
      .def_readonly("b12", &BoundSet::b12)
      .def_readonly("b012", &BoundSet::b012)
      .def("__repr__", [](const BoundSet& b) {
        return "BoundSet(" + std::to_string(b.b1) + ", " + std::to_string(b.b2) + ", " + std::to_string(b.b12) +
               ", " + std::to_string(b.b012) + ")";
      });

  m.def("outer_bounds", [](const GaussianCmChannel& ch) { return outer_bound_at(ch, full_private(ch)); });
  m.def("no_coop_bounds", [](const GaussianCmChannel& ch) { return no_coop_at(ch, full_private(ch)); });
  m.def("one_round_bounds", [](const GaussianCmChannel& ch) {
    return one_round_at(ch, full_private(ch), sigma_min(ch));
  });
  m.def("sigma_min", [](const GaussianCmChannel& ch) {
    auto q = sigma_min(ch);
    return py::make_tuple(q.sigma1sq, q.sigma2sq);
  });

  m.def(
      "region",
      [](const GaussianCmChannel& ch, const std::string& scheme, std::size_t grid, bool full) {
        return gaussian_region(ch, parse_scheme(scheme), grid_of(grid), full ? R0Mode::full : R0Mode::zero_common)
            .vertices();
      },
      py::arg("channel"), py::arg("scheme"), py::arg("grid") = 33, py::arg("full") = false,
      "Vertices of the hulled region; (R1, R2) pairs in the last slot unless full.");
  m.def(
      "max_sum_rate",
      [](const GaussianCmChannel& ch, const std::string& scheme, std::size_t grid) {
        return private_sum_support(gaussian_region(ch, parse_scheme(scheme), grid_of(grid), R0Mode::zero_common));
      },
      py::arg("channel"), py::arg("scheme"), py::arg("grid") = 33);
  m.def(
      "cme_max_sum_rate",
      [](const GaussianCmChannel& ch, double cbar12, double cbar21, std::size_t grid) {
        return private_sum_support(cme_outer(ch, {cbar12, cbar21}, grid_of(grid)));
      },
      py::arg("channel"), py::arg("cbar12"), py::arg("cbar21"), py::arg("grid") = 17);

  m.def(
      "broadcast_gap",
      [](double pa, double pb, double c12, double c21) { return report(broadcast_gap({pa, pb, c12, c21})); },
      py::arg("pa"), py::arg("pb"), py::arg("c12"), py::arg("c21"));
  m.def(
      "symmetric_gap",
      [](double a, double b, double p, double c) {
        auto s = symmetric_gap({a, b, p, c});
        py::dict d;
        d["r1"] = report(s.r1);
        d["r2"] = report(s.r2);
        d["sum"] = report(s.sum);
        d["sum_half"] = report(s.sum_half);
        d["pass"] = s.pass();
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("p"), py::arg("c"));
  m.def(
      "multiplexing_gain",
      [](double g_direct, double g_cross, double eps, const std::vector<double>& ps) {
        GaussianCmChannel t{g_direct, g_cross, g_cross, g_direct, 1, 1, 0, 0};
        std::vector<double> out;
        for (const auto& r : multiplexing_sweep(t, CapacityLaw::scaling(eps), ps)) out.push_back(r.gain);
        return out;
      },
      py::arg("g_direct"), py::arg("g_cross"), py::arg("eps"), py::arg("p_grid"));
}
