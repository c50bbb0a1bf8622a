#include <doctest.h>

#include <string>

#include "cubecond/io.hpp"
#include "test_support.hpp"

using namespace cubecond;

namespace {

std::string field_of(const std::string& json, bool model = false) {
  try {
    if (model) {
      parse_model(json);
    } else {
      parse_polynomial(json);
    }
  } catch (const InputError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("polynomial documents") {
  const auto f = parse_polynomial(R"({"n": 2, "terms": [{"alpha": [1, 0], "c": 1.5}, {"alpha": [0, 3], "c": -2}]})");
  CHECK(f.dimension() == 2);
  CHECK(f.support_size() == 2);
  CHECK(f.coefficient({0, 3}) == -2.0);
  CHECK(f.degree() == 3);

  CHECK(field_of("{") == "<document>");
  CHECK(field_of("[]") == "<document>");
  CHECK(field_of(R"({"terms": []})") == "n");
  CHECK(field_of(R"({"n": 0, "terms": []})") == "n");
  CHECK(field_of(R"({"n": 1})") == "terms");
  CHECK(field_of(R"({"n": 1, "terms": [{"alpha": [0], "c": 1}, {"alpha": [1, 2], "c": 1}]})") == "terms[1].alpha");
  CHECK(field_of(R"({"n": 1, "terms": [{"alpha": [-1], "c": 1}]})") == "terms[0].alpha[0]");
  CHECK(field_of(R"({"n": 1, "terms": [{"alpha": ["x"], "c": 1}]})") == "terms[0].alpha[0]");
  CHECK(field_of(R"({"n": 1, "terms": [{"alpha": [0]}]})") == "terms[0].c");
  CHECK(field_of(R"({"n": 1, "terms": [{"alpha": [0], "c": "one"}]})") == "terms[0].c");
}

TEST_CASE("polynomial round trip") {
  testing_support::Gen gen(81);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 4));
    const auto f = gen.polynomial(n, gen.integer(1, 12), static_cast<std::size_t>(gen.integer(1, 10)) + n);
    for (int indent : {-1, 2}) {
      const auto g = parse_polynomial(polynomial_to_json(f, indent));
      REQUIRE(g.support_size() == f.support_size());
      for (std::size_t i = 0; i < f.support_size(); ++i) {
        CHECK(g.terms()[i].alpha == f.terms()[i].alpha);
        CHECK(g.terms()[i].coeff == f.terms()[i].coeff);
      }
    }
  }
}

TEST_CASE("model documents") {
  const auto m = parse_model(
      R"({"n": 1, "support": [[0], [1], [5]], "dist": {"kind": "uniform", "lo": -2, "hi": 2}, "p": 8})");
  CHECK(m.support_size() == 3);
  CHECK(m.p() == 8.0);
  CHECK(m.distribution().kind == DistributionKind::Uniform);
  CHECK(m.distribution().a == -2.0);

  const auto w = parse_model(R"({"n": 1, "support": [[0], [1]], "dist": {"kind": "weibull", "p": 2, "scale": 3}})");
  CHECK(w.distribution().kind == DistributionKind::WeibullSymmetric);
  CHECK(w.distribution().b == 3.0);
  CHECK(w.p() == 2.0);

  const auto s = parse_model(R"({"n": 1, "support": [[0], [1], [2]], "dist": {"kind": "gaussian", "sd": 1},
      "smoothed": {"sigma": 0.1, "center": {"n": 1, "terms": [{"alpha": [2], "c": 1}]}}})");
  REQUIRE(s.smoothing().has_value());
  CHECK(s.smoothing()->sigma == 0.1);

  CHECK(field_of(R"({"n": 1, "support": [[0], [1]]})", true) == "dist");
  CHECK(field_of(R"({"n": 1, "support": [[0], [1]], "dist": {"kind": "cauchy"}})", true) == "dist.kind");
  CHECK(field_of(R"({"n": 1, "support": [[0], [1]], "dist": {"kind": "gaussian", "sd": -1}})", true) == "dist");
  CHECK(field_of(R"({"n": 1, "support": [[0], [1, 1]], "dist": {"kind": "gaussian"}})", true) == "support[1]");
  CHECK(field_of(R"({"n": 1, "support": [[1]], "dist": {"kind": "gaussian"}})", true) == "support");
  CHECK(field_of(R"({"n": 1, "support": [[0], [1]], "dist": {"kind": "gaussian"}, "smoothed": {"sigma": 0}})",
                 true) == "smoothed.center");
}

TEST_CASE("experiment documents") {
  const auto cfg = parse_experiment_config(
      R"({"experiment": "pv", "n": 1, "support": [[0], [1], [2]], "dist": {"kind": "gaussian"},
          "trials": 12, "seed": 99, "max_depth": 8, "workers": 2})");
  CHECK(cfg.kind == ExperimentKind::Pv);
  CHECK(cfg.trials == 12);
  CHECK(cfg.seed == 99);
  CHECK(cfg.max_depth == 8);
  CHECK(cfg.workers == 2);

  auto field = [](const std::string& json) {
    try {
      parse_experiment_config(json);
    } catch (const InputError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  const std::string model = R"("n": 1, "support": [[0], [1]], "dist": {"kind": "gaussian"})";
  CHECK(field("{" + model + "}") == "experiment");
  CHECK(field(R"({"experiment": "x", )" + model + "}") == "experiment");
  CHECK(field(R"({"experiment": "tail", "trials": -3, )" + model + "}") == "trials");
  CHECK(field(R"({"experiment": "tail", "t_grid": [1.0], )" + model + "}") == "t_grid");
  CHECK(field(R"({"experiment": "tail", "point": "origin", )" + model + "}") == "point");
  CHECK(field(R"({"experiment": "descartes", "k_list": [1, 7], )" + model + "}") == "k_list");
  CHECK(field(R"({"experiment": "tail", )" + model + "}") == "<none>");
}

TEST_CASE("read_text_file") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/cubecond.json"), std::runtime_error);
}
