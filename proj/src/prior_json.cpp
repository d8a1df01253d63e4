#include <json.hpp>

#include "catknock/errors.hpp"
#include "catknock/prior.hpp"

// JSON (de)serialization of prior specifications.  Field names are part of
// the CLI contract and documented in the README.

namespace catknock {

namespace {

using nlohmann::json;

LinkSpec link_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw ingestion_error("link spec must be an object with a \"type\" field");
  std::string type = j.at("type").get<std::string>();
  if (type == "one_minus_u") return LinkSpec::one_minus_u();
  if (type == "power") return LinkSpec::power(j.at("b").get<double>());
  if (type == "affine")
    return LinkSpec::affine(j.at("c0").get<double>(), j.at("c1").get<double>());
  if (type == "table")
    return LinkSpec::table(j.at("x").get<std::vector<double>>(),
                           j.at("y").get<std::vector<double>>());
  throw ingestion_error("unknown link type: " + type);
}

json link_to_json(const LinkSpec& l) {
  switch (l.family) {
    case LinkSpec::Family::one_minus_u:
      return {{"type", "one_minus_u"}};
    case LinkSpec::Family::power:
      return {{"type", "power"}, {"b", l.exponent}};
    case LinkSpec::Family::affine:
      return {{"type", "affine"}, {"c0", l.c0}, {"c1", l.c1}};
    case LinkSpec::Family::table:
      return {{"type", "table"}, {"x", l.xs}, {"y", l.ys}};
  }
  throw parameter_error("unknown link family");
}

Prior grid_from_json(const json& j) {
  const json& pts = j.at("points");
  std::vector<double> weights = j.at("weights").get<std::vector<double>>();
  if (!pts.is_array() || pts.empty())
    throw ingestion_error("grid prior: \"points\" must be a nonempty array");
  if (pts.front().is_number()) {
    return grid_prior(pts.get<std::vector<double>>(), std::move(weights));
  }
  auto points = pts.get<std::vector<std::vector<double>>>();
  std::size_t dim = points.front().size();
  if (j.contains("k")) {
    if (dim != 2)
      throw ingestion_error("two-group grid prior: points must be (u,v) pairs");
    return two_group_grid_prior(std::move(points), std::move(weights),
                                j.at("k").get<int>());
  }
  if (j.value("simplex", false) || dim != 2)
    return simplex_grid_prior(std::move(points), std::move(weights));
  throw ingestion_error(
      "grid prior with 2-vector points: set \"k\" (two-group) or \"simplex\": true");
}

std::pair<std::vector<double>, std::vector<double>> base_from_json(const json& j,
                                                                   int grid_size) {
  if (j.is_string() && j.get<std::string>() == "uniform") {
    std::vector<double> u, w;
    for (int i = 0; i < grid_size; ++i) {
      u.push_back((i + 0.5) / grid_size);
      w.push_back(1.0 / grid_size);
    }
    return {u, w};
  }
  if (j.is_object())
    return {j.at("points").get<std::vector<double>>(),
            j.at("weights").get<std::vector<double>>()};
  throw ingestion_error("graph prior base must be \"uniform\" or {points, weights}");
}

}  // namespace

Prior prior_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ingestion_error(std::string("invalid prior JSON: ") + e.what());
  }
  try {
    std::string family = j.at("family").get<std::string>();
    if (family == "beta")
      return BetaPrior{j.at("a").get<double>(), j.at("b").get<double>()};
    if (family == "dirichlet")
      return DirichletPrior{j.at("alpha").get<std::vector<double>>()};
    if (family == "grid") return grid_from_json(j);
    if (family == "binomial_grid")
      return binomial_grid_prior(j.at("p").get<int>(), j.at("alpha").get<double>());
    if (family == "uniform_grid")
      return uniform_grid_prior(j.at("p").get<int>(),
                                j.value("drop_endpoints", false));
    if (family == "two_group_binomial")
      return two_group_binomial_prior(j.at("k").get<int>(), j.at("p").get<int>(),
                                      j.at("alpha").get<double>(),
                                      link_from_json(j.at("link")));
    if (family == "graph") {
      int k = j.at("k").get<int>();
      LinkSpec link = link_from_json(j.at("link"));
      int grid_size = j.value("grid_size", kDefaultGraphGridSize);
      const json& base = j.at("base");
      if (base.is_string() && base.get<std::string>() == "uniform")
        return graph_prior_uniform(link, k, grid_size);
      if (base.is_object() && base.contains("beta_a")) {
        GraphPrior g;
        g.conjugate = true;
        g.base_a = base.at("beta_a").get<double>();
        g.base_b = base.at("beta_b").get<double>();
        g.link = link;
        g.split_k = k;
        Prior prior = g;
        validate(prior);
        return prior;
      }
      auto [u, w] = base_from_json(base, grid_size);
      return graph_prior(std::move(u), std::move(w), link, k);
    }
    if (family == "mixed_graph") {
      int k = j.at("k").get<int>();
      LinkSpec f1 = link_from_json(j.at("link1"));
      LinkSpec f2 = link_from_json(j.at("link2"));
      int grid_size = j.value("grid_size", kDefaultGraphGridSize);
      auto [u, w] = base_from_json(j.at("base"), grid_size);
      return mixed_graph_prior(std::move(u), std::move(w), f1, f2, k);
    }
    throw ingestion_error("unknown prior family: " + family);
  } catch (const json::exception& e) {
    throw ingestion_error(std::string("invalid prior spec: ") + e.what());
  }
}

std::string prior_to_json_text(const Prior& prior) {
  json j = std::visit(
    [](const auto& pr) -> json {
      using T = std::decay_t<decltype(pr)>;
      if constexpr (std::is_same_v<T, BetaPrior>) {
        return {{"family", "beta"}, {"a", pr.a}, {"b", pr.b}};
      } else if constexpr (std::is_same_v<T, DirichletPrior>) {
        return {{"family", "dirichlet"}, {"alpha", pr.alpha}};
      } else if constexpr (std::is_same_v<T, DiscreteGridPrior>) {
        json out{{"family", "grid"}, {"weights", pr.weights}};
        if (pr.kind == GridKind::binary) {
          std::vector<double> pts;
          for (const auto& p : pr.points) pts.push_back(p[0]);
          out["points"] = pts;
        } else {
          out["points"] = pr.points;
          if (pr.kind == GridKind::two_group)
            out["k"] = pr.split_k;
          else
            out["simplex"] = true;
        }
        return out;
      } else if constexpr (std::is_same_v<T, GraphPrior>) {
        json out{{"family", "graph"},
                 {"link", link_to_json(pr.link)},
                 {"k", pr.split_k}};
        if (pr.conjugate && pr.base_a == 1 && pr.base_b == 1)
          out["base"] = "uniform";
        else if (pr.conjugate)
          out["base"] = {{"beta_a", pr.base_a}, {"beta_b", pr.base_b}};
        else
          out["base"] = {{"points", pr.grid_u}, {"weights", pr.grid_w}};
        return out;
      } else {
        return {{"family", "mixed_graph"},
                {"base", {{"points", pr.grid_u}, {"weights", pr.grid_w}}},
                {"link1", link_to_json(pr.mean_link)},
                {"link2", link_to_json(pr.var_link)},
                {"k", pr.split_k}};
      }
    },
    prior);
  return j.dump();
}

}  // namespace catknock
