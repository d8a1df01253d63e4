// catknock: exact conditional-independence knockoffs for exchangeable
// categorical covariates, plus the knockoff-filter simulation harness.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "catknock/csv.hpp"
#include "catknock/errors.hpp"
#include "catknock/gaussian_knockoffs.hpp"
#include "catknock/harness.hpp"
#include "catknock/model.hpp"
#include "catknock/robustness.hpp"
#include "catknock/sampler.hpp"

namespace ck = catknock;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ck::ingestion_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ck::Prior load_prior(const std::string& path) {
  return ck::prior_from_json_text(slurp(path));
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ck::ingestion_error("cannot write " + out_path);
  out << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact knockoffs for exchangeable categorical covariates"};
  app.require_subcommand(1);

  // sample: prior -> X CSV
  std::string s_prior, s_out;
  std::size_t s_n = 100, s_p = 30;
  std::uint64_t s_seed = 1;
  auto* sample = app.add_subcommand("sample", "Sample X from an exchangeable prior");
  sample->add_option("--prior", s_prior, "prior spec JSON file")->required();
  sample->add_option("--n", s_n, "number of rows");
  sample->add_option("--p", s_p, "number of covariates");
  sample->add_option("--seed", s_seed, "RNG seed");
  sample->add_option("--out", s_out, "output CSV (stdout if omitted)");

  // knockoff: X CSV + prior -> knockoff CSV
  std::string k_prior, k_x, k_out;
  std::uint64_t k_seed = 1;
  auto* knockoff = app.add_subcommand("knockoff", "Draw exact CIK knockoffs of X");
  knockoff->add_option("--prior", k_prior, "prior spec JSON file")->required();
  knockoff->add_option("--x", k_x, "X CSV of category codes")->required();
  knockoff->add_option("--seed", k_seed, "RNG seed");
  knockoff->add_option("--out", k_out, "output CSV");

  // gaussian-knockoff
  std::string g_x, g_out;
  std::uint64_t g_seed = 1;
  auto* gauss = app.add_subcommand("gaussian-knockoff",
                                   "Second-order Gaussian Model-X knockoffs");
  gauss->add_option("--x", g_x, "X CSV (numeric)")->required();
  gauss->add_option("--seed", g_seed, "RNG seed");
  gauss->add_option("--out", g_out, "output CSV");

  // prob: log probabilities per row
  std::string p_prior, p_x, p_xk, p_out;
  auto* prob = app.add_subcommand("prob", "Log marginal/joint/conditional probabilities");
  prob->add_option("--prior", p_prior, "prior spec JSON file")->required();
  prob->add_option("--x", p_x, "X CSV of category codes")->required();
  prob->add_option("--xk", p_xk, "knockoff CSV (enables joint/conditional columns)");
  prob->add_option("--out", p_out, "output CSV");

  // tv: distances and robustness bounds
  std::string t_p1, t_p2, t_x, t_out;
  int t_n = 0;
  auto* tv = app.add_subcommand("tv", "Total variation distances and robustness bounds");
  tv->add_option("--prior1", t_p1, "first prior spec JSON file")->required();
  tv->add_option("--prior2", t_p2, "second prior spec JSON file")->required();
  tv->add_option("--n", t_n, "also report the exact TV of the n-variate laws");
  tv->add_option("--x", t_x, "X CSV; per row, report conditional TV and both bounds");
  tv->add_option("--out", t_out, "output CSV");

  // select: knockoff filter on given matrices
  std::string sel_x, sel_xk, sel_y, sel_out;
  double sel_q = 0.1;
  bool sel_plus = false;
  std::uint64_t sel_seed = 1;
  auto* select = app.add_subcommand("select", "Run the knockoff filter on X, Xk, y");
  select->add_option("--x", sel_x, "X CSV")->required();
  select->add_option("--xk", sel_xk, "knockoff CSV")->required();
  select->add_option("--y", sel_y, "response CSV (single column)")->required();
  select->add_option("--q", sel_q, "nominal FDR level");
  select->add_flag("--plus", sel_plus, "knockoff+ offset");
  select->add_option("--seed", sel_seed, "RNG seed (CV folds)");
  select->add_option("--out", sel_out, "output CSV");

  // simulate
  std::string sim_config, sim_out, sim_csv;
  bool sim_desk = false, sim_paper = false, sim_timings = false;
  std::uint64_t sim_seed = 0;
  bool sim_seed_set = false;
  auto* simulate = app.add_subcommand("simulate", "Run the FDR/power experiment");
  simulate->add_option("--config", sim_config, "experiment config JSON file");
  auto* seed_opt = simulate->add_option("--seed", sim_seed, "override config seed");
  simulate->add_flag("--desk-scale", sim_desk, "desk-scale defaults (p=30, n=300, m=200)");
  simulate->add_flag("--paper-scale", sim_paper, "paper-scale defaults (p=100, n=m=1000)");
  simulate->add_flag("--timings", sim_timings, "include wall time in the JSON report");
  simulate->add_option("--out", sim_out, "report JSON output");
  simulate->add_option("--csv", sim_csv, "also write a CSV summary here");

  // real: observed dataset, single knockoff, selection only
  std::string r_data, r_prior, r_out, r_method = "cik";
  double r_q = 0.2;
  int r_mcat = 1;
  bool r_plus = false;
  std::uint64_t r_seed = 1;
  auto* real = app.add_subcommand("real", "Select covariates on an observed CSV dataset");
  real->add_option("--data", r_data, "CSV: p code columns + numeric response")->required();
  real->add_option("--prior", r_prior, "prior spec JSON file (cik method)");
  real->add_option("--method", r_method, "cik or gaussian");
  real->add_option("--q", r_q, "nominal FDR level (default 0.2)");
  real->add_option("--m-cat", r_mcat, "category bound of the codes");
  real->add_flag("--plus", r_plus, "knockoff+ offset");
  real->add_option("--seed", r_seed, "RNG seed");
  real->add_option("--out", r_out, "output CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      ck::Prior prior = load_prior(s_prior);
      ck::CategoricalMatrix X =
          ck::sample_x(s_n, s_p, prior, ck::SeededRng(s_seed));
      if (s_out.empty()) s_out = "/dev/stdout";
      ck::write_codes_csv(s_out, X);
    } else if (*knockoff) {
      ck::Prior prior = load_prior(k_prior);
      int m = ck::category_bound(prior);
      ck::CategoricalMatrix X = ck::read_codes_csv(k_x, m);
      ck::CategoricalMatrix Xk = ck::knockoff_matrix(X, prior, ck::SeededRng(k_seed));
      if (k_out.empty()) k_out = "/dev/stdout";
      ck::write_codes_csv(k_out, Xk);
    } else if (*gauss) {
      ck::Matrix X = ck::read_matrix_csv(g_x);
      ck::Matrix Xk = ck::gaussian_knockoffs(X, ck::SeededRng(g_seed));
      if (g_out.empty()) g_out = "/dev/stdout";
      ck::write_matrix_csv(g_out, Xk);
    } else if (*prob) {
      ck::Prior prior = load_prior(p_prior);
      int m = ck::category_bound(prior);
      std::optional<int> split;
      if (ck::is_two_group(prior)) split = ck::split_index(prior);
      ck::CategoricalMatrix X = ck::read_codes_csv(p_x, m);
      std::ostringstream out;
      if (p_xk.empty()) {
        out << "row,log_marginal\n";
        for (std::size_t i = 0; i < X.rows; ++i)
          out << (i + 1) << ','
              << fmt(ck::log_marginal_prob(ck::suff_stats(X.row(i), split), prior))
              << '\n';
      } else {
        ck::CategoricalMatrix Xk = ck::read_codes_csv(p_xk, m);
        if (Xk.rows != X.rows || Xk.cols != X.cols)
          throw ck::ingestion_error("prob: X and Xk shapes differ");
        out << "row,log_marginal,log_joint,log_conditional\n";
        for (std::size_t i = 0; i < X.rows; ++i) {
          auto st = ck::suff_stats(X.row(i), split);
          auto stk = ck::suff_stats(Xk.row(i), split);
          double lm = ck::log_marginal_prob(st, prior);
          double lj = ck::log_joint_prob(st, stk, prior);
          out << (i + 1) << ',' << fmt(lm) << ',' << fmt(lj) << ','
              << fmt(lj - lm) << '\n';
        }
      }
      emit(p_out, out.str());
    } else if (*tv) {
      ck::Prior p1 = load_prior(t_p1), p2 = load_prior(t_p2);
      std::ostringstream out;
      double tv_priors = ck::tv_distance_priors(p1, p2).value;
      if (t_x.empty()) {
        out << "tv_priors";
        if (t_n > 0) out << ",tv_laws_n";
        out << '\n' << fmt(tv_priors);
        if (t_n > 0)
          out << ',' << fmt(ck::tv_exchangeable_laws(p1, p2, t_n,
                                                     ck::category_bound(p1)));
        out << '\n';
      } else {
        int m = ck::category_bound(p1);
        ck::CategoricalMatrix X = ck::read_codes_csv(t_x, m);
        out << "row,tv_priors,lhs,bound_a,bound_b\n";
        for (std::size_t i = 0; i < X.rows; ++i) {
          ck::CategoricalVector x = X.row(i);
          double lhs = ck::tv_knockoff_conditionals(x, p1, p2);
          ck::ConditionalTvBounds b = ck::conditional_tv_bounds(x, p1, p2);
          out << (i + 1) << ',' << fmt(tv_priors) << ',' << fmt(lhs) << ','
              << fmt(b.bound_a) << ',' << fmt(b.bound_b) << '\n';
        }
      }
      emit(t_out, out.str());
    } else if (*select) {
      ck::Matrix X = ck::read_matrix_csv(sel_x);
      ck::Matrix Xk = ck::read_matrix_csv(sel_xk);
      std::vector<double> y = ck::read_column_csv(sel_y);
      ck::WStats w = ck::coef_diff_stats(X, Xk, y, ck::SeededRng(sel_seed));
      ck::SelectionResult res = ck::knockoff_threshold(w, sel_q, sel_plus);
      std::ostringstream out;
      out << "column,w,selected,threshold\n";
      for (std::size_t j = 0; j < w.w.size(); ++j) {
        bool chosen = std::binary_search(res.selected.begin(), res.selected.end(),
                                         static_cast<int>(j));
        out << (j + 1) << ',' << fmt(w.w[j]) << ',' << (chosen ? 1 : 0) << ','
            << fmt(res.threshold) << '\n';
      }
      emit(sel_out, out.str());
    } else if (*simulate) {
      ck::ExperimentConfig cfg = sim_paper ? ck::ExperimentConfig::paper_scale()
                                           : ck::ExperimentConfig::desk_scale();
      (void)sim_desk;
      if (!sim_config.empty()) {
        std::string text = slurp(sim_config);
        if (sim_paper) {
          auto j = nlohmann::ordered_json::parse(text);
          j["scale"] = "paper";
          text = j.dump();
        }
        cfg = ck::ExperimentConfig::from_json_text(text);
      }
      sim_seed_set = seed_opt->count() > 0;
      if (sim_seed_set) cfg.seed = sim_seed;
      ck::ExperimentReport report = ck::run_simulation(cfg);
      std::cerr << "simulate: finished in " << report.wall_time_s << " s\n";
      emit(sim_out, ck::report_to_json_text(report, sim_timings));
      if (!sim_csv.empty()) emit(sim_csv, ck::report_to_csv_text(report));
    } else if (*real) {
      ck::ExperimentConfig cfg;
      cfg.knockoff_method = r_method;
      cfg.q = r_q;
      cfg.m_cat = r_mcat;
      cfg.seed = r_seed;
      cfg.plus = r_plus;
      if (r_method == "cik") {
        if (r_prior.empty())
          throw ck::parameter_error("real: --prior is required with the cik method");
        cfg.prior_json = ck::prior_to_json_text(load_prior(r_prior));
      }
      ck::RealRunResult res = ck::run_real(r_data, cfg);
      std::ostringstream out;
      out << "column,name,w,selected,threshold\n";
      for (std::size_t j = 0; j < res.w.w.size(); ++j) {
        bool chosen = std::binary_search(res.selected.begin(), res.selected.end(),
                                         static_cast<int>(j));
        out << (j + 1) << ',' << res.column_names[j] << ','
            << fmt(res.w.w[j]) << ',' << (chosen ? 1 : 0) << ','
            << fmt(res.threshold) << '\n';
      }
      emit(r_out, out.str());
      for (const auto& name : res.selected_names) std::cerr << "selected: " << name << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
