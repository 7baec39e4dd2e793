// Python bindings for the stitching core. The surface mirrors the C++
// headers one to one so results match the benchmark binary exactly.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdio>

#include "ustitch/geom.hpp"
#include "ustitch/stitch.hpp"

namespace py = pybind11;
using namespace ustitch;

namespace {

std::string point_repr(const Point2& p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "Point2(%.6g, %.6g)", p.x, p.y);
  return buf;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "fuses uncertain short-term trajectory predictions with lane "
            "goal paths";

  py::class_<Point2>(m, "Point2")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point2::x)
      .def_readwrite("y", &Point2::y)
      .def("__repr__", &point_repr);

  py::class_<Cov2>(m, "Cov2")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("xx"), py::arg("xy"),
           py::arg("yy"))
      .def_static("identity", &Cov2::identity)
      .def_readwrite("xx", &Cov2::xx)
      .def_readwrite("xy", &Cov2::xy)
      .def_readwrite("yy", &Cov2::yy)
      .def("inverse", &Cov2::inverse)
      .def("min_eigenvalue", &Cov2::min_eigenvalue)
      .def("max_eigenvalue", &Cov2::max_eigenvalue);

  py::class_<Polyline>(m, "Polyline")
      .def(py::init<std::vector<Point2>>(), py::arg("vertices"))
      .def("vertices", &Polyline::vertices,
           py::return_value_policy::reference_internal)
      .def("length", &Polyline::length)
      .def("segment_count", &Polyline::segment_count);

  py::class_<Projection>(m, "Projection")
      .def_readonly("point", &Projection::point)
      .def_readonly("arc", &Projection::arc);

  py::enum_<ProjectionMetric>(m, "ProjectionMetric")
      .value("EUCLIDEAN", ProjectionMetric::kEuclidean)
      .value("MAHALANOBIS", ProjectionMetric::kMahalanobis);

  py::class_<OrientedBox>(m, "OrientedBox")
      .def(py::init<Point2, double, double, double>(), py::arg("center"),
           py::arg("heading"), py::arg("length"), py::arg("width"))
      .def_readonly("center", &OrientedBox::center)
      .def_readonly("heading", &OrientedBox::heading)
      .def_readonly("length", &OrientedBox::length)
      .def_readonly("width", &OrientedBox::width)
      .def("corners", &OrientedBox::corners);

  m.def("project_point", &project_point, py::arg("line"), py::arg("p"));
  m.def("point_at", &point_at, py::arg("line"), py::arg("arc"));
  m.def("heading_at", &heading_at, py::arg("line"), py::arg("arc"));
  m.def("resample", &resample, py::arg("line"), py::arg("step"));
  m.def("mahalanobis_distance", &mahalanobis_distance, py::arg("p"),
        py::arg("mean"), py::arg("cov"));
  m.def("mahalanobis_project", &mahalanobis_project, py::arg("line"),
        py::arg("mean"), py::arg("cov"),
        py::arg("metric") = ProjectionMetric::kEuclidean);

  py::class_<GaussianWaypoint>(m, "GaussianWaypoint")
      .def(py::init<>())
      .def(py::init([](const Point2& mean, const Cov2& cov) {
             return GaussianWaypoint{mean, cov};
           }),
           py::arg("mean"), py::arg("cov"))
      .def_readwrite("mean", &GaussianWaypoint::mean)
      .def_readwrite("cov", &GaussianWaypoint::cov);

  py::class_<PredictedTrajectory>(m, "PredictedTrajectory")
      .def(py::init<>())
      .def(py::init([](double dt, std::vector<GaussianWaypoint> waypoints) {
             PredictedTrajectory t;
             t.dt = dt;
             t.waypoints = std::move(waypoints);
             return t;
           }),
           py::arg("dt"), py::arg("waypoints"))
      .def_readwrite("dt", &PredictedTrajectory::dt)
      .def_readwrite("waypoints", &PredictedTrajectory::waypoints)
      .def("horizon", &PredictedTrajectory::horizon);

  py::class_<StitchParams>(m, "StitchParams")
      .def(py::init<>())
      .def_readwrite("lambda0", &StitchParams::lambda0)
      .def_readwrite("iterations", &StitchParams::iterations)
      .def_readwrite("alpha", &StitchParams::alpha)
      .def_readwrite("c", &StitchParams::c)
      .def_readwrite("sample_step", &StitchParams::sample_step)
      .def_readwrite("shrink_distance", &StitchParams::shrink_distance)
      .def_readwrite("target_length", &StitchParams::target_length)
      .def_readwrite("use_schedule", &StitchParams::use_schedule);

  py::class_<SolutionPath>(m, "SolutionPath")
      .def_readonly("points", &SolutionPath::points)
      .def_readonly("prefix_length", &SolutionPath::prefix_length)
      .def_readonly("breakaway", &SolutionPath::breakaway);

  m.def("compatibility_score", &compatibility_score, py::arg("waypoint"),
        py::arg("goal"), py::arg("footprint"),
        py::arg("metric") = ProjectionMetric::kEuclidean);
  m.def("breakaway_horizon", &breakaway_horizon, py::arg("trajectory"),
        py::arg("goal"), py::arg("footprints"), py::arg("alpha"));
  m.def("lambda_schedule", &lambda_schedule, py::arg("t"),
        py::arg("breakaway_t"), py::arg("waypoint"), py::arg("goal"),
        py::arg("params"));
  m.def("waypoint_objective", &waypoint_objective, py::arg("y"), py::arg("g"),
        py::arg("mean"), py::arg("cov"), py::arg("lam"));
  m.def("solve_waypoint", &solve_waypoint, py::arg("waypoint"),
        py::arg("goal"), py::arg("lam"), py::arg("iterations") = 10);
  m.def("solve_waypoint_trace", &solve_waypoint_trace, py::arg("waypoint"),
        py::arg("goal"), py::arg("lam"), py::arg("iterations") = 10);
  m.def("make_footprints", &make_footprints, py::arg("trajectory"),
        py::arg("goal"), py::arg("actor_length"), py::arg("actor_width"));
  m.def("stitch_prefix", &stitch_prefix, py::arg("trajectory"),
        py::arg("goal"), py::arg("footprints"), py::arg("params"));
  m.def("extend_path", &extend_path, py::arg("prefix"), py::arg("breakaway"),
        py::arg("goal"), py::arg("params"));
  m.def("stitch", &stitch, py::arg("trajectory"), py::arg("goal"),
        py::arg("actor_length") = 4.8, py::arg("actor_width") = 2.0,
        py::arg("params") = StitchParams{});

  py::register_exception<NotPositiveDefiniteError>(m,
                                                   "NotPositiveDefiniteError");
}
