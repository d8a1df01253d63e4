// Python bindings for the catknock core: prior construction, exact
// probabilities, samplers, robustness bounds, the knockoff filter, and the
// simulation harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "catknock/errors.hpp"
#include "catknock/gaussian_knockoffs.hpp"
#include "catknock/harness.hpp"
#include "catknock/model.hpp"
#include "catknock/prior.hpp"
#include "catknock/robustness.hpp"
#include "catknock/sampler.hpp"
#include "catknock/selection.hpp"

namespace py = pybind11;
namespace ck = catknock;

namespace {

// Opaque holder: keeps the prior variant away from pybind11's std::variant
// value-conversion machinery.
struct PyPrior {
  ck::Prior prior;
};

using IntMatrix = std::vector<std::vector<int>>;
using RealMatrix = std::vector<std::vector<double>>;

ck::CategoricalVector make_vec(const std::vector<int>& codes, int m) {
  return ck::CategoricalVector{codes, m};
}

ck::CategoricalMatrix make_cat_matrix(const IntMatrix& rows, int m) {
  ck::CategoricalMatrix X;
  X.rows = rows.size();
  X.cols = rows.empty() ? 0 : rows.front().size();
  X.m = m;
  for (const auto& r : rows) {
    if (r.size() != X.cols)
      throw ck::parameter_error("matrix rows have unequal lengths");
    X.codes.insert(X.codes.end(), r.begin(), r.end());
  }
  return X;
}

IntMatrix cat_matrix_out(const ck::CategoricalMatrix& X) {
  IntMatrix out(X.rows, std::vector<int>(X.cols));
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j) out[i][j] = X(i, j);
  return out;
}

ck::Matrix make_matrix(const RealMatrix& rows) {
  ck::Matrix X(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != X.cols)
      throw ck::parameter_error("matrix rows have unequal lengths");
    for (std::size_t j = 0; j < X.cols; ++j) X(i, j) = rows[i][j];
  }
  return X;
}

RealMatrix matrix_out(const ck::Matrix& X) {
  RealMatrix out(X.rows, std::vector<double>(X.cols));
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j) out[i][j] = X(i, j);
  return out;
}

ck::SuffStats stats_of(const ck::Prior& prior, const std::vector<int>& x) {
  std::optional<int> split;
  if (ck::is_two_group(prior)) split = ck::split_index(prior);
  return ck::suff_stats(make_vec(x, ck::category_bound(prior)), split);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact conditional-independence knockoffs for exchangeable "
              "categorical covariates";

  py::register_exception<ck::parameter_error>(mod, "ParameterError",
                                              PyExc_ValueError);
  py::register_exception<ck::conditioning_error>(mod, "ConditioningError",
                                                 PyExc_ValueError);
  py::register_exception<ck::ingestion_error>(mod, "IngestionError",
                                              PyExc_ValueError);

  py::class_<PyPrior>(mod, "Prior")
      .def_static(
          "from_json",
          [](const std::string& text) { return PyPrior{ck::prior_from_json_text(text)}; },
          py::arg("text"))
      .def_static(
          "beta", [](double a, double b) { return PyPrior{ck::BetaPrior{a, b}}; },
          py::arg("a"), py::arg("b"))
      .def_static(
          "dirichlet",
          [](std::vector<double> alpha) {
            PyPrior p{ck::DirichletPrior{std::move(alpha)}};
            ck::validate(p.prior);
            return p;
          },
          py::arg("alpha"))
      .def_static(
          "binomial_grid",
          [](int p, double alpha) { return PyPrior{ck::binomial_grid_prior(p, alpha)}; },
          py::arg("p"), py::arg("alpha"))
      .def_static(
          "uniform_grid",
          [](int p, bool drop_endpoints) {
            return PyPrior{ck::uniform_grid_prior(p, drop_endpoints)};
          },
          py::arg("p"), py::arg("drop_endpoints") = false)
      .def_static(
          "grid",
          [](std::vector<double> points, std::vector<double> weights) {
            return PyPrior{ck::grid_prior(std::move(points), std::move(weights))};
          },
          py::arg("points"), py::arg("weights"))
      .def("to_json", [](const PyPrior& p) { return ck::prior_to_json_text(p.prior); })
      .def("category_bound",
           [](const PyPrior& p) { return ck::category_bound(p.prior); })
      .def("moments",
           [](const PyPrior& p) {
             std::vector<std::pair<double, double>> out;
             for (const auto& m : ck::prior_moments(p.prior))
               out.emplace_back(m.mean, m.variance);
             return out;
           })
      .def(
          "posterior",
          [](const PyPrior& p, const std::vector<int>& x) {
            return PyPrior{ck::posterior(p.prior, stats_of(p.prior, x))};
          },
          py::arg("x"))
      .def("__repr__", [](const PyPrior& p) {
        return "Prior(" + ck::prior_to_json_text(p.prior) + ")";
      });

  mod.def(
      "tv_distance_priors",
      [](const PyPrior& a, const PyPrior& b) {
        auto r = ck::tv_distance_priors(a.prior, b.prior);
        return py::make_tuple(r.value, r.mutually_singular);
      },
      py::arg("p1"), py::arg("p2"),
      "Returns (distance, mutually_singular_flag)");
  mod.def("beta_tv_bound", &ck::beta_tv_bound, py::arg("a1"), py::arg("b1"),
          py::arg("a2"), py::arg("b2"), py::arg("c"), py::arg("d"));

  mod.def(
      "log_marginal_prob",
      [](const std::vector<int>& x, const PyPrior& p) {
        return ck::log_marginal_prob(stats_of(p.prior, x), p.prior);
      },
      py::arg("x"), py::arg("prior"));
  mod.def(
      "log_joint_prob",
      [](const std::vector<int>& x, const std::vector<int>& xk, const PyPrior& p) {
        return ck::log_joint_prob(stats_of(p.prior, x), stats_of(p.prior, xk),
                                  p.prior);
      },
      py::arg("x"), py::arg("xk"), py::arg("prior"));
  mod.def(
      "conditional_knockoff_pmf",
      [](const std::vector<int>& x, const std::vector<int>& xk, const PyPrior& p) {
        return ck::conditional_knockoff_pmf(stats_of(p.prior, x),
                                            stats_of(p.prior, xk), p.prior);
      },
      py::arg("x"), py::arg("xk"), py::arg("prior"));

  mod.def(
      "sample_x",
      [](std::size_t n, std::size_t p, const PyPrior& prior, std::uint64_t seed) {
        return cat_matrix_out(ck::sample_x(n, p, prior.prior, ck::SeededRng(seed)));
      },
      py::arg("n"), py::arg("p"), py::arg("prior"), py::arg("seed"));
  mod.def(
      "sample_knockoff",
      [](const std::vector<int>& x, const PyPrior& prior, std::uint64_t seed) {
        auto xk = ck::sample_knockoff(make_vec(x, ck::category_bound(prior.prior)),
                                      prior.prior, ck::SeededRng(seed));
        return xk.codes;
      },
      py::arg("x"), py::arg("prior"), py::arg("seed"));
  mod.def(
      "knockoff_matrix",
      [](const IntMatrix& X, const PyPrior& prior, std::uint64_t seed) {
        return cat_matrix_out(ck::knockoff_matrix(
            make_cat_matrix(X, ck::category_bound(prior.prior)), prior.prior,
            ck::SeededRng(seed)));
      },
      py::arg("X"), py::arg("prior"), py::arg("seed"));
  mod.def(
      "gaussian_knockoffs",
      [](const RealMatrix& X, std::uint64_t seed) {
        return matrix_out(ck::gaussian_knockoffs(make_matrix(X), ck::SeededRng(seed)));
      },
      py::arg("X"), py::arg("seed"));

  mod.def(
      "tv_exchangeable_laws",
      [](const PyPrior& a, const PyPrior& b, int n, int m, long long cap) {
        return ck::tv_exchangeable_laws(a.prior, b.prior, n, m, cap);
      },
      py::arg("p1"), py::arg("p2"), py::arg("n"), py::arg("m"), py::arg("cap") = 0);
  mod.def(
      "tv_knockoff_conditionals",
      [](const std::vector<int>& x, const PyPrior& a, const PyPrior& b, int m) {
        return ck::tv_knockoff_conditionals(make_vec(x, m), a.prior, b.prior);
      },
      py::arg("x"), py::arg("p1"), py::arg("p2"), py::arg("m") = 1);
  mod.def(
      "conditional_tv_bounds",
      [](const std::vector<int>& x, const PyPrior& a, const PyPrior& b, int m) {
        auto r = ck::conditional_tv_bounds(make_vec(x, m), a.prior, b.prior);
        return py::make_tuple(r.bound_a, r.bound_b);
      },
      py::arg("x"), py::arg("p1"), py::arg("p2"), py::arg("m") = 1);

  mod.def(
      "fit_lasso",
      [](const RealMatrix& X, const std::vector<double>& y, double lam) {
        auto fit = ck::fit_lasso(make_matrix(X), y, lam);
        return py::make_tuple(fit.beta, fit.kkt_residual);
      },
      py::arg("X"), py::arg("y"), py::arg("lam"),
      "Returns (beta, kkt_residual); beta is on the standardized scale");
  mod.def(
      "coef_diff_stats",
      [](const RealMatrix& X, const RealMatrix& Xk, const std::vector<double>& y,
         std::uint64_t seed) {
        auto w = ck::coef_diff_stats(make_matrix(X), make_matrix(Xk), y,
                                     ck::SeededRng(seed));
        return py::make_tuple(w.w, w.lambda);
      },
      py::arg("X"), py::arg("Xk"), py::arg("y"), py::arg("seed"));
  mod.def(
      "knockoff_threshold",
      [](const std::vector<double>& w, double q, bool plus) {
        ck::WStats ws;
        ws.w = w;
        auto res = ck::knockoff_threshold(ws, q, plus);
        return py::make_tuple(res.selected, res.threshold);
      },
      py::arg("w"), py::arg("q"), py::arg("plus") = true);
  mod.def(
      "fdr_power",
      [](const std::vector<int>& selected, const std::vector<int>& support) {
        auto r = ck::fdr_power(selected, support);
        return py::make_tuple(r.fdp, r.power);
      },
      py::arg("selected"), py::arg("support"));

  mod.def(
      "run_simulation",
      [](const std::string& config_json) {
        auto cfg = ck::ExperimentConfig::from_json_text(config_json);
        return ck::report_to_json_text(ck::run_simulation(cfg));
      },
      py::arg("config_json"),
      "Runs the FDR/power experiment; returns the report as JSON text");

  mod.attr("__version__") = "0.1.0";
}
