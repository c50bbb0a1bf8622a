#include "cubecond/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace cubecond {

using nlohmann::json;

InputError::InputError(std::string field, const std::string& message)
    : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

namespace {

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("<document>", std::string("invalid JSON (") + e.what() + ")");
  }
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw InputError(path.empty() ? "<document>" : path, "expected an object");
  auto it = obj.find(key);
  const std::string field = path.empty() ? key : path + "." + key;
  if (it == obj.end()) throw InputError(field, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw InputError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError(field, "expected a finite number");
  return x;
}

std::uint64_t as_count(const json& v, const std::string& field) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw InputError(field, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Exponent as_exponent(const json& v, std::size_t n, const std::string& field) {
  if (!v.is_array() || v.size() != n) {
    throw InputError(field, "expected an array of " + std::to_string(n) + " non-negative integers");
  }
  Exponent alpha;
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = as_count(v[i], field + "[" + std::to_string(i) + "]");
    if (k > 100000) throw InputError(field + "[" + std::to_string(i) + "]", "exponent too large");
    alpha.push_back(static_cast<std::uint32_t>(k));
  }
  return alpha;
}

std::size_t as_dimension(const json& doc, const std::string& path) {
  const std::string field = join(path, "n");
  const auto n = as_count(member(doc, "n", path), field);
  if (n < 1 || n > 64) throw InputError(field, "expected an integer in [1, 64]");
  return static_cast<std::size_t>(n);
}

SparsePolynomial polynomial_from(const json& doc, const std::string& path) {
  const std::size_t n = as_dimension(doc, path);
  const std::string tfield = join(path, "terms");
  const json& terms = member(doc, "terms", path);
  if (!terms.is_array() || terms.empty()) throw InputError(tfield, "expected a non-empty array");
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = tfield + "[" + std::to_string(i) + "]";
    out.push_back({as_exponent(member(terms[i], "alpha", at), n, at + ".alpha"),
                   as_number(member(terms[i], "c", at), at + ".c")});
  }
  return SparsePolynomial(n, std::move(out));
}

Distribution distribution_from(const json& d, const std::string& path) {
  const json& kind = member(d, "kind", path);
  if (!kind.is_string()) throw InputError(path + ".kind", "expected a string");
  const std::string k = kind.get<std::string>();
  auto num = [&](const char* key, double fallback) {
    auto it = d.find(key);
    return it == d.end() ? fallback : as_number(*it, path + "." + key);
  };
  try {
    if (k == "gaussian") return Distribution::gaussian(num("mean", 0.0), num("sd", 1.0));
    if (k == "uniform") return Distribution::uniform(num("lo", -1.0), num("hi", 1.0));
    if (k == "weibull") return Distribution::weibull_symmetric(num("p", 1.0), num("scale", 1.0));
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(path, e.what());
  }
  throw InputError(path + ".kind", "expected gaussian, uniform or weibull");
}

RandomModel model_from(const json& doc) {
  const std::size_t n = as_dimension(doc, "");
  const json& support = member(doc, "support", "");
  if (!support.is_array() || support.empty()) throw InputError("support", "expected a non-empty array");
  std::vector<Exponent> m;
  for (std::size_t i = 0; i < support.size(); ++i) {
    m.push_back(as_exponent(support[i], n, "support[" + std::to_string(i) + "]"));
  }
  const Distribution dist = distribution_from(member(doc, "dist", ""), "dist");
  double p = 2.0;
  if (auto it = doc.find("p"); it != doc.end()) p = as_number(*it, "p");
  try {
    RandomModel model(n, std::move(m), dist, p);
    if (auto it = doc.find("smoothed"); it != doc.end()) {
      const double sigma = as_number(member(*it, "sigma", "smoothed"), "smoothed.sigma");
      const SparsePolynomial center = polynomial_from(member(*it, "center", "smoothed"), "smoothed.center");
      try {
        return smoothed_model(center, sigma, model);
      } catch (const std::invalid_argument& e) {
        throw InputError("smoothed", e.what());
      }
    }
    return model;
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw InputError(what.find("p must") != std::string::npos ? "p" : "support", what);
  }
}

}  // namespace

SparsePolynomial parse_polynomial(const std::string& text) {
  return polynomial_from(parse_document(text), "");
}

std::string polynomial_to_json(const SparsePolynomial& f, int indent) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back({{"alpha", t.alpha}, {"c", t.coeff}});
  json doc = {{"n", f.dimension()}, {"terms", terms}};
  return doc.dump(indent);
}

RandomModel parse_model(const std::string& text) { return model_from(parse_document(text)); }

ExperimentConfig parse_experiment_config(const std::string& text) {
  const json doc = parse_document(text);
  const json& kind = member(doc, "experiment", "");
  if (!kind.is_string()) throw InputError("experiment", "expected a string");
  ExperimentKind k;
  try {
    k = parse_experiment_kind(kind.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError("experiment", e.what());
  }
  ExperimentConfig cfg(k, model_from(doc));
  if (auto it = doc.find("trials"); it != doc.end()) cfg.trials = as_count(*it, "trials");
  if (auto it = doc.find("seed"); it != doc.end()) cfg.seed = as_count(*it, "seed");
  if (auto it = doc.find("max_depth"); it != doc.end()) {
    const auto depth = as_count(*it, "max_depth");
    if (depth > 60) throw InputError("max_depth", "expected at most 60");
    cfg.max_depth = static_cast<int>(depth);
  }
  if (auto it = doc.find("grid_eps"); it != doc.end()) cfg.grid_eps = as_number(*it, "grid_eps");
  if (auto it = doc.find("eps"); it != doc.end()) cfg.eps = as_number(*it, "eps");
  if (auto it = doc.find("workers"); it != doc.end()) {
    cfg.workers = static_cast<unsigned>(std::min<std::uint64_t>(as_count(*it, "workers"), 256));
  }
  if (auto it = doc.find("t_grid"); it != doc.end()) {
    if (!it->is_array()) throw InputError("t_grid", "expected an array of numbers");
    cfg.t_grid.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      cfg.t_grid.push_back(as_number((*it)[i], "t_grid[" + std::to_string(i) + "]"));
    }
  }
  if (auto it = doc.find("k_list"); it != doc.end()) {
    if (!it->is_array()) throw InputError("k_list", "expected an array of integers");
    cfg.k_list.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      cfg.k_list.push_back(static_cast<int>(std::min<std::uint64_t>(
          as_count((*it)[i], "k_list[" + std::to_string(i) + "]"), 1000)));
    }
  }
  if (auto it = doc.find("point"); it != doc.end()) {
    if (!it->is_array()) throw InputError("point", "expected an array of numbers");
    cfg.point.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      cfg.point.push_back(as_number((*it)[i], "point[" + std::to_string(i) + "]"));
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    // Blame the knob the message names, if any.
    const std::string what = e.what();
    std::string field = "experiment";
    for (const char* knob : {"t_grid", "k_list", "point", "trials", "max_depth", "grid_eps"}) {
      if (what.find(knob) != std::string::npos) {
        field = knob;
        break;
      }
    }
    throw InputError(field, what);
  }
  return cfg;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace cubecond
