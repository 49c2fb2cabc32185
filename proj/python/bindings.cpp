// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "mpseg/core.hpp"
#include "mpseg/detection.hpp"
#include "mpseg/error.hpp"
#include "mpseg/eval.hpp"
#include "mpseg/matrix_profile.hpp"
#include "mpseg/pipeline.hpp"
#include "mpseg/segmentation.hpp"
#include "mpseg/synthetic.hpp"

namespace py = pybind11;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IndexArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const DoubleArray& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

mpseg::WindowConfig window(std::size_t m, std::optional<std::size_t> zone) {
  return zone ? mpseg::WindowConfig(m, *zone) : mpseg::WindowConfig(m);
}

py::tuple profile_tuple(const mpseg::MatrixProfile& mp) {
  return py::make_tuple(to_array(mp.distances), to_array(mp.indices));
}

mpseg::CadDenominator parse_denominator(const std::string& s) {
  if (s == "corrected") return mpseg::CadDenominator::kCorrected;
  if (s == "raw") return mpseg::CadDenominator::kRaw;
  throw py::value_error("denominator must be 'corrected' or 'raw'");
}

void bind_profile(py::module_& m) {
  m.def("sliding_window", [](const DoubleArray& values, std::size_t w) {
    const mpseg::TimeSeries ts(to_vector(values));
    const auto windows = mpseg::sliding_window(ts, w);
    py::array_t<double> out({static_cast<py::ssize_t>(windows.size()),
                             static_cast<py::ssize_t>(w)});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < windows.size(); ++i) {
      for (std::size_t k = 0; k < w; ++k) view(i, k) = windows[i][k];
    }
    return out;
  }, py::arg("values"), py::arg("m"));

  m.def("rolling_mean_std", [](const DoubleArray& values, std::size_t w) {
    const auto stats = mpseg::rolling_mean_std(mpseg::TimeSeries(to_vector(values)), w);
    return py::make_tuple(to_array(stats.means), to_array(stats.stds));
  }, py::arg("values"), py::arg("m"));

  m.def("znorm_distance", [](const DoubleArray& a, const DoubleArray& b) {
    return mpseg::znorm_distance(to_vector(a), to_vector(b));
  }, py::arg("a"), py::arg("b"));

  m.def("brute_force_profile",
        [](const DoubleArray& values, std::size_t w, std::optional<std::size_t> zone) {
          return profile_tuple(mpseg::brute_force_profile(
              mpseg::TimeSeries(to_vector(values)), window(w, zone)));
        },
        py::arg("values"), py::arg("m"), py::arg("exclusion_zone") = py::none());

  m.def("stomp_profile",
        [](const DoubleArray& values, std::size_t w, std::optional<std::size_t> zone) {
          return profile_tuple(
              mpseg::stomp_profile(mpseg::TimeSeries(to_vector(values)), window(w, zone)));
        },
        py::arg("values"), py::arg("m"), py::arg("exclusion_zone") = py::none());

  m.def("conv_profile",
        [](const DoubleArray& values, std::size_t w, std::optional<std::size_t> zone,
           std::size_t batch_rows, std::size_t workers) {
          const mpseg::TimeSeries ts(to_vector(values));
          mpseg::MatrixProfile mp;
          {
            py::gil_scoped_release release;
            mp = mpseg::conv_profile(ts, window(w, zone), {batch_rows, workers});
          }
          return profile_tuple(mp);
        },
        py::arg("values"), py::arg("m"), py::arg("exclusion_zone") = py::none(),
        py::arg("batch_rows") = 256, py::arg("workers") = 1);
}

void bind_segmentation(py::module_& m) {
  m.def("arc_counts", [](const IndexArray& indices) {
    const std::vector<std::int64_t> idx(indices.data(), indices.data() + indices.size());
    return to_array(mpseg::arc_counts(idx, idx.size()));
  }, py::arg("indices"));

  m.def("idealized_arc_count", [](std::size_t l) {
    return to_array(mpseg::idealized_arc_count(l));
  }, py::arg("l"));

  m.def("corrected_arc_density",
        [](const IndexArray& counts, const DoubleArray& idealized, std::size_t edge_guard,
           const std::string& denominator) {
          const std::vector<std::int64_t> ac(counts.data(), counts.data() + counts.size());
          return to_array(mpseg::corrected_arc_density(ac, to_vector(idealized), edge_guard,
                                                       parse_denominator(denominator)));
        },
        py::arg("arc_counts"), py::arg("idealized"), py::arg("edge_guard"),
        py::arg("denominator") = "corrected");
}

void bind_detection(py::module_& m) {
  py::class_<mpseg::DetectionReport>(m, "DetectionReport")
      .def_readonly("anomaly_detected", &mpseg::DetectionReport::anomaly_detected)
      .def_readonly("onset_index", &mpseg::DetectionReport::onset_index)
      .def_readonly("min_cad", &mpseg::DetectionReport::min_cad)
      .def_readonly("epsilon", &mpseg::DetectionReport::epsilon)
      .def_readonly("m", &mpseg::DetectionReport::m)
      .def_readonly("burn_in", &mpseg::DetectionReport::burn_in)
      .def_property_readonly("labels", [](const mpseg::DetectionReport& r) {
        return to_array(r.labels);
      });

  m.def("detect", [](const DoubleArray& cad, double epsilon) {
    return mpseg::detect(to_vector(cad), epsilon);
  }, py::arg("cad"), py::arg("epsilon") = 0.35);

  m.def("recommend_epsilon", [](const std::vector<std::vector<double>>& curves) {
    return mpseg::recommend_epsilon(curves).epsilon;
  }, py::arg("clean_curves"));

  py::class_<mpseg::ScoreCard>(m, "ScoreCard")
      .def_readonly("tp", &mpseg::ScoreCard::tp)
      .def_readonly("fp", &mpseg::ScoreCard::fp)
      .def_readonly("tn", &mpseg::ScoreCard::tn)
      .def_readonly("fn", &mpseg::ScoreCard::fn)
      .def_readonly("precision", &mpseg::ScoreCard::precision)
      .def_readonly("recall", &mpseg::ScoreCard::recall)
      .def_readonly("f1", &mpseg::ScoreCard::f1)
      .def_readonly("fpr", &mpseg::ScoreCard::fpr);

  m.def("score",
        [](const py::array_t<std::uint8_t, py::array::forcecast>& predicted,
           std::optional<std::int64_t> anomaly_start) {
          const std::vector<std::uint8_t> y(predicted.data(), predicted.data() + predicted.size());
          return mpseg::score(y, mpseg::GroundTruth{anomaly_start}, y.size());
        },
        py::arg("predicted"), py::arg("anomaly_start"));
}

void bind_pipeline(py::module_& m) {
  m.def("generate_synthetic",
        [](std::size_t length, double boundary_fraction, double period_a, double period_b,
           double noise_std, std::uint64_t seed, bool clean) {
          mpseg::SyntheticSpec spec;
          spec.total_length = length;
          spec.boundary_fraction = boundary_fraction;
          spec.regime_a.period = period_a;
          spec.regime_b.period = period_b;
          spec.noise_std = noise_std;
          spec.seed = seed;
          const auto s = clean ? mpseg::generate_clean(spec) : mpseg::generate_synthetic(spec);
          const auto v = s.series.values();
          return py::make_tuple(to_array(std::vector<double>(v.begin(), v.end())),
                                s.truth.anomaly_start);
        },
        py::arg("length") = 1800, py::arg("boundary_fraction") = 0.6,
        py::arg("period_a") = 32.0, py::arg("period_b") = 48.0, py::arg("noise_std") = 0.05,
        py::arg("seed") = 0, py::arg("clean") = false);

  m.def("run_pipeline",
        [](const DoubleArray& values, std::size_t w, double epsilon, std::size_t burn_in,
           std::size_t batch_rows, std::size_t workers, const std::string& denominator) {
          mpseg::PipelineConfig cfg;
          cfg.m = w;
          cfg.epsilon = epsilon;
          cfg.burn_in = burn_in;
          cfg.batch_rows = batch_rows;
          cfg.workers = workers;
          cfg.cad_denominator = parse_denominator(denominator);
          const mpseg::TimeSeries ts(to_vector(values));
          mpseg::PipelineResult r;
          {
            py::gil_scoped_release release;
            r = mpseg::run_pipeline(ts, cfg);
          }
          py::dict out;
          out["report"] = r.report;
          out["onset_index_raw"] = r.onset_raw();
          out["offset"] = r.analysis.offset;
          out["profile_distances"] = to_array(r.analysis.profile.distances);
          out["profile_indices"] = to_array(r.analysis.profile.indices);
          out["arc_counts"] = to_array(r.analysis.density.raw_counts);
          out["cad"] = to_array(r.analysis.density.corrected);
          return out;
        },
        py::arg("values"), py::arg("m") = 100, py::arg("epsilon") = 0.35,
        py::arg("burn_in") = 30, py::arg("batch_rows") = 256, py::arg("workers") = 1,
        py::arg("denominator") = "corrected");
}

}  // namespace

PYBIND11_MODULE(_mpseg, m) {
  m.doc() = "Matrix-profile semantic segmentation anomaly detection";

  py::register_exception<mpseg::Error>(m, "MpsegError", PyExc_ValueError);

  bind_profile(m);
  bind_segmentation(m);
  bind_detection(m);
  bind_pipeline(m);

  m.attr("__version__") = "0.1.0";
}
