#include "catknock/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "catknock/csv.hpp"
#include "catknock/errors.hpp"
#include "catknock/gaussian_knockoffs.hpp"
#include "catknock/sampler.hpp"

namespace catknock {

namespace {

using ordered_json = nlohmann::ordered_json;

// stream tags under an amplitude cell
enum : std::uint64_t {
  kTagCoeff = 0,
  kTagData = 1,
  kTagNoise = 2,
  kTagKnockoff = 3,
  kTagCv = 4,
  kTagReplicate = 5,
};

Matrix to_double_matrix(const CategoricalMatrix& X) {
  Matrix out(X.rows, X.cols);
  for (std::size_t i = 0; i < X.codes.size(); ++i)
    out.data[i] = static_cast<double>(X.codes[i]);
  return out;
}

struct ReplicateInputs {
  std::vector<double> beta;
  std::vector<int> support;
  CategoricalMatrix X;
  Matrix X_real;
  std::vector<double> y;
};

ReplicateInputs make_inputs(const ExperimentConfig& cfg, const Prior& prior,
                            double amplitude, SeededRng coeff_rng,
                            SeededRng data_rng, SeededRng noise_rng) {
  ReplicateInputs in;
  std::tie(in.beta, in.support) =
      gen_coefficients(cfg.p, cfg.support_size, amplitude, cfg.n, coeff_rng);
  in.X = sample_x(static_cast<std::size_t>(cfg.n),
                  static_cast<std::size_t>(cfg.p), prior, data_rng);
  in.X_real = to_double_matrix(in.X);
  in.y = gen_response(in.X, in.beta, noise_rng);
  return in;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (p < 1 || n < 1 || replicates < 1)
    throw parameter_error("config: p, n and replicates must be >= 1");
  if (support_size < 0 || support_size > p)
    throw parameter_error("config: support_size must lie in [0, p]");
  if (amplitudes.empty()) throw parameter_error("config: amplitudes must be nonempty");
  for (double a : amplitudes)
    if (!(a >= 0)) throw parameter_error("config: amplitudes must be nonnegative");
  if (!(q > 0) || !(q < 1)) throw parameter_error("config: q must lie in (0,1)");
  if (knockoff_method != "cik" && knockoff_method != "gaussian")
    throw parameter_error("config: knockoff_method must be \"cik\" or \"gaussian\"");
  if (m_cat < 1 || m_cat > 2)
    throw parameter_error("config: m_cat must be 1 or 2 (response model limit)");
  if (prior_json.empty())
    throw parameter_error("config: simulations need a prior spec (X is sampled from it)");
}

ExperimentConfig ExperimentConfig::desk_scale() { return {}; }

ExperimentConfig ExperimentConfig::paper_scale() {
  ExperimentConfig c;
  c.p = 100;
  c.n = 1000;
  c.replicates = 1000;
  c.support_size = 60;
  c.amplitudes = {1.5, 2, 3, 4, 5, 7.5, 10, 15, 20};
  return c;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ingestion_error(std::string("invalid config JSON: ") + e.what());
  }
  ExperimentConfig c;
  if (j.value("scale", "desk") == "paper") c = paper_scale();
  try {
    c.p = j.value("p", c.p);
    c.n = j.value("n", c.n);
    c.replicates = j.value("replicates", j.value("m", c.replicates));
    c.support_size = j.value("support_size", c.support_size);
    if (j.contains("amplitudes"))
      c.amplitudes = j.at("amplitudes").get<std::vector<double>>();
    if (j.contains("prior"))
      c.prior_json = prior_to_json_text(prior_from_json_text(j.at("prior").dump()));
    c.q = j.value("q", c.q);
    c.knockoff_method = j.value("knockoff", c.knockoff_method);
    c.m_cat = j.value("m_cat", c.m_cat);
    c.seed = j.value("seed", c.seed);
    c.plus = j.value("plus", c.plus);
    c.redraw_per_replicate = j.value("redraw_per_replicate", c.redraw_per_replicate);
  } catch (const nlohmann::json::exception& e) {
    throw ingestion_error(std::string("invalid config field: ") + e.what());
  }
  c.validate();
  return c;
}

std::string ExperimentConfig::to_json_text() const {
  ordered_json j;
  j["p"] = p;
  j["n"] = n;
  j["replicates"] = replicates;
  j["support_size"] = support_size;
  j["amplitudes"] = amplitudes;
  if (!prior_json.empty()) j["prior"] = ordered_json::parse(prior_json);
  j["q"] = q;
  j["knockoff"] = knockoff_method;
  j["m_cat"] = m_cat;
  j["seed"] = seed;
  j["plus"] = plus;
  j["redraw_per_replicate"] = redraw_per_replicate;
  return j.dump();
}

std::pair<std::vector<double>, std::vector<int>> gen_coefficients(
    int p, int support_size, double amplitude, int n, SeededRng rng) {
  if (support_size < 0 || support_size > p)
    throw parameter_error("gen_coefficients: support_size must lie in [0, p]");
  if (n < 1) throw parameter_error("gen_coefficients: n must be >= 1");
  std::vector<int> pool(static_cast<std::size_t>(p));
  std::iota(pool.begin(), pool.end(), 0);
  // partial Fisher-Yates: first support_size entries are the support
  for (int i = 0; i < support_size; ++i) {
    std::size_t j = static_cast<std::size_t>(i) +
                    static_cast<std::size_t>(rng.uniform() * (p - i));
    j = std::min(j, pool.size() - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  std::vector<int> support(pool.begin(), pool.begin() + support_size);
  std::sort(support.begin(), support.end());
  std::vector<double> beta(static_cast<std::size_t>(p), 0.0);
  double value = amplitude / std::sqrt(static_cast<double>(n));
  for (int i : support) beta[static_cast<std::size_t>(i)] = value;
  return {std::move(beta), std::move(support)};
}

std::vector<double> gen_response(const CategoricalMatrix& X,
                                 std::span<const double> beta, SeededRng rng) {
  if (beta.size() != X.cols)
    throw parameter_error("gen_response: beta length does not match X columns");
  if (X.m > 2)
    throw parameter_error("gen_response: response model covers codes {0,1,2} only");
  std::vector<double> y(X.rows, 0.0);
  for (std::size_t j = 0; j < X.rows; ++j) {
    double acc = 0;
    for (std::size_t i = 0; i < X.cols; ++i) {
      switch (X(j, i)) {
        case 0: acc += 2 * beta[i]; break;
        case 1: acc += beta[i]; break;
        case 2: acc += 0.5 * beta[i]; break;
        default:
          throw parameter_error("gen_response: invalid code");
      }
    }
    y[j] = acc + rng.normal();
  }
  return y;
}

namespace {

void summarize(AmplitudeCell& cell) {
  auto mean_se = [](const std::vector<double>& v, double& mean, double& se) {
    std::size_t m = v.size();
    mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(m);
    if (m < 2) {
      se = 0;
      return;
    }
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    se = std::sqrt(ss / static_cast<double>(m - 1)) /
         std::sqrt(static_cast<double>(m));
  };
  cell.replicates = static_cast<int>(cell.fdp.size());
  if (cell.replicates == 0) return;
  mean_se(cell.fdp, cell.mean_fdr, cell.se_fdr);
  mean_se(cell.power, cell.mean_power, cell.se_power);
}

}  // namespace

ExperimentReport run_simulation(const ExperimentConfig& config) {
  config.validate();
  auto t0 = std::chrono::steady_clock::now();
  Prior prior = prior_from_json_text(config.prior_json);
  if (category_bound(prior) != config.m_cat)
    throw parameter_error("run_simulation: prior category bound differs from m_cat");

  ExperimentReport report;
  report.config = config;
  SeededRng master(config.seed);

  for (std::size_t a = 0; a < config.amplitudes.size(); ++a) {
    AmplitudeCell cell;
    cell.amplitude = config.amplitudes[a];
    SeededRng cell_rng = master.spawn(a);
    try {
      ReplicateInputs fixed;
      if (!config.redraw_per_replicate)
        fixed = make_inputs(config, prior, cell.amplitude,
                            cell_rng.spawn(kTagCoeff), cell_rng.spawn(kTagData),
                            cell_rng.spawn(kTagNoise));
      for (int k = 0; k < config.replicates; ++k) {
        const ReplicateInputs* in = &fixed;
        ReplicateInputs fresh;
        SeededRng knock_rng(0), cv_rng(0);
        if (config.redraw_per_replicate) {
          SeededRng rep = cell_rng.spawn(kTagReplicate).spawn(static_cast<std::uint64_t>(k));
          fresh = make_inputs(config, prior, cell.amplitude, rep.spawn(kTagCoeff),
                              rep.spawn(kTagData), rep.spawn(kTagNoise));
          in = &fresh;
          knock_rng = rep.spawn(kTagKnockoff);
          cv_rng = rep.spawn(kTagCv);
        } else {
          knock_rng = cell_rng.spawn(kTagKnockoff).spawn(static_cast<std::uint64_t>(k));
          cv_rng = cell_rng.spawn(kTagCv).spawn(static_cast<std::uint64_t>(k));
        }
        Matrix Xk_real;
        if (config.knockoff_method == "cik") {
          CategoricalMatrix Xk = knockoff_matrix(in->X, prior, knock_rng);
          Xk_real = to_double_matrix(Xk);
        } else {
          Xk_real = gaussian_knockoffs(in->X_real, knock_rng);
        }
        WStats w = coef_diff_stats(in->X_real, Xk_real, in->y, cv_rng);
        SelectionResult sel = knockoff_threshold(w, config.q, config.plus);
        FdrPower fp = fdr_power(sel.selected, in->support);
        cell.fdp.push_back(fp.fdp);
        cell.power.push_back(fp.power);
      }
    } catch (const std::exception& e) {
      cell.error = std::string("amplitude ") + std::to_string(cell.amplitude) +
                   ": " + e.what();
    }
    summarize(cell);
    report.cells.push_back(std::move(cell));
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::string report_to_json_text(const ExperimentReport& report,
                                bool include_wall_time) {
  ordered_json j;
  j["config"] = ordered_json::parse(report.config.to_json_text());
  j["results"] = ordered_json::array();
  for (const auto& cell : report.cells) {
    ordered_json c;
    c["amplitude"] = cell.amplitude;
    c["replicates"] = cell.replicates;
    c["mean_fdr"] = cell.mean_fdr;
    c["se_fdr"] = cell.se_fdr;
    c["mean_power"] = cell.mean_power;
    c["se_power"] = cell.se_power;
    c["replicate_fdp"] = cell.fdp;
    c["replicate_power"] = cell.power;
    if (!cell.error.empty()) c["error"] = cell.error;
    j["results"].push_back(std::move(c));
  }
  if (include_wall_time) j["wall_time_s"] = report.wall_time_s;
  return j.dump(2) + "\n";
}

std::string report_to_csv_text(const ExperimentReport& report) {
  std::ostringstream out;
  out << "amplitude,metric,value,se\n";
  char buf[160];
  auto put = [&](double a, const char* metric, double v, double se) {
    std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g,%.17g\n", a, metric, v, se);
    out << buf;
  };
  for (const auto& cell : report.cells) {
    put(cell.amplitude, "fdr", cell.mean_fdr, cell.se_fdr);
    put(cell.amplitude, "power", cell.mean_power, cell.se_power);
  }
  return out.str();
}

RealRunResult run_real(const std::string& csv_path, const ExperimentConfig& config) {
  Dataset data = read_dataset_csv(csv_path, config.m_cat);
  SeededRng master(config.seed);
  Matrix X_real = to_double_matrix(data.X);
  Matrix Xk_real;
  if (config.knockoff_method == "cik") {
    Prior prior = prior_from_json_text(config.prior_json);
    CategoricalMatrix Xk = knockoff_matrix(data.X, prior, master.spawn(kTagKnockoff));
    Xk_real = to_double_matrix(Xk);
  } else {
    Xk_real = gaussian_knockoffs(X_real, master.spawn(kTagKnockoff));
  }
  RealRunResult res;
  res.column_names = data.column_names;
  res.w = coef_diff_stats(X_real, Xk_real, data.y, master.spawn(kTagCv));
  SelectionResult sel = knockoff_threshold(res.w, config.q, config.plus);
  res.selected = sel.selected;
  res.threshold = sel.threshold;
  for (int i : sel.selected)
    res.selected_names.push_back(data.column_names[static_cast<std::size_t>(i)]);
  return res;
}

}  // namespace catknock
