#include "latspec/serialize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace latspec {

void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& where) {
  if (!j.is_object())
    throw std::invalid_argument(where + ": expected an object");
  for (const auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw std::invalid_argument("unknown field '" + key + "' in " + where);
}

json spectrum_to_json(const SpectrumSet& s) {
  json out = json::array();
  for (const Interval& c : s.components()) out.push_back({c.lo, c.hi});
  return out;
}

SpectrumSet spectrum_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("spectrum: expected an array");
  std::vector<Interval> parts;
  for (const json& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("spectrum: expected [lo, hi] pairs");
    parts.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return normalize(std::move(parts), 0.0);
}

namespace {

cd complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return cd(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return cd(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument(where + ": expected a number or [re, im]");
}

Point point_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(where + ": expected a nonempty integer array");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer())
      throw std::invalid_argument(where + ": expected integers");
    p[static_cast<Eigen::Index>(i)] = j[i].get<int>();
  }
  return p;
}

// Named slowly oscillating sample shapes, all with range [-1, 1].
std::function<double(const Point&)> so_base(const std::string& name) {
  if (name == "sqrt_sin")
    return [](const Point& x) {
      return std::sin(std::sqrt(static_cast<double>(x.cwiseAbs().sum())));
    };
  if (name == "log_cos")
    return [](const Point& x) {
      return std::cos(std::log1p(static_cast<double>(x.cwiseAbs().sum())));
    };
  throw std::invalid_argument("so coefficient: unknown sample '" + name + "'");
}

std::function<cd(const Point&)> so_eval_from(const json& j, double lo,
                                             double hi, double* scale_out,
                                             double* offset_out,
                                             std::string* sample_out) {
  std::string sample = j.value("sample", std::string("sqrt_sin"));
  double offset = j.value("offset", 0.5 * (lo + hi));
  double scale = j.value("scale", 0.5 * (hi - lo));
  if (offset - std::abs(scale) < lo - 1e-12 ||
      offset + std::abs(scale) > hi + 1e-12)
    throw std::invalid_argument("so coefficient: sample exceeds envelope");
  auto base = so_base(sample);
  *scale_out = scale;
  *offset_out = offset;
  *sample_out = sample;
  return [base, offset, scale](const Point& x) {
    return cd(offset + scale * base(x), 0.0);
  };
}

std::pair<double, double> envelope_from_json(const json& j,
                                             const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument(where + ": envelope must be [m, M]");
  double lo = j[0].get<double>(), hi = j[1].get<double>();
  if (lo > hi) throw std::invalid_argument(where + ": envelope m > M");
  return {lo, hi};
}

std::function<std::int64_t(std::int64_t)> gamma_from_json(
    const json& j, const std::string& where) {
  if (j.is_array() && j.size() == 3) {
    std::array<std::int64_t, 3> p = {j[0].get<std::int64_t>(),
                                     j[1].get<std::int64_t>(),
                                     j[2].get<std::int64_t>()};
    return [p](std::int64_t k) { return p[2] * k * k + p[1] * k + p[0]; };
  }
  if (j.is_object()) {
    require_keys(j, {"list"}, where);
    std::vector<std::int64_t> list = j.at("list").get<std::vector<std::int64_t>>();
    if (list.size() < 201)
      throw std::invalid_argument(where +
                                  ": explicit gamma list needs >= 201 entries");
    return [list](std::int64_t k) {
      if (k < 0 || k >= static_cast<std::int64_t>(list.size()))
        throw std::invalid_argument("gamma list index out of range");
      return list[static_cast<std::size_t>(k)];
    };
  }
  throw std::invalid_argument(where +
                              ": expected [p0, p1, p2] or { \"list\": [...] }");
}

std::vector<cd> table_from_json(const json& j, const Point& period,
                                const std::string& where) {
  long d = 1;
  for (Eigen::Index k = 0; k < period.size(); ++k) {
    if (period[k] < 1) throw std::invalid_argument(where + ": period entries must be >= 1");
    d *= period[k];
  }
  if (!j.is_array() || static_cast<long>(j.size()) != d)
    throw std::invalid_argument(where + ": table size must match the period cell");
  std::vector<cd> table;
  for (const json& v : j) table.push_back(complex_from_json(v, where));
  return table;
}

}  // namespace

Coefficient coefficient_from_json(const json& j) {
  if (!j.is_object() || !j.contains("category"))
    throw std::invalid_argument("coefficient: missing category");
  std::string cat = j.at("category").get<std::string>();

  if (cat == "constant") {
    require_keys(j, {"category", "value"}, "constant coefficient");
    return Coefficient::constant(
        complex_from_json(j.at("value"), "constant coefficient"));
  }
  if (cat == "periodic") {
    require_keys(j, {"category", "period", "table"}, "periodic coefficient");
    Point period = point_from_json(j.at("period"), "periodic coefficient");
    return Coefficient::periodic(
        period, table_from_json(j.at("table"), period, "periodic coefficient"));
  }
  if (cat == "so") {
    require_keys(j, {"category", "envelope", "sample", "scale", "offset"},
                 "so coefficient");
    auto [lo, hi] = envelope_from_json(j.at("envelope"), "so coefficient");
    double scale, offset;
    std::string sample;
    auto eval = so_eval_from(j, lo, hi, &scale, &offset, &sample);
    return Coefficient::slowly_oscillating(eval, lo, hi);
  }
  if (cat == "two_valued") {
    require_keys(j, {"category", "a", "b", "gamma_minus", "gamma_plus"},
                 "two_valued coefficient");
    return Coefficient::two_valued(
        j.at("a").get<double>(), j.at("b").get<double>(),
        gamma_from_json(j.at("gamma_minus"), "two_valued gamma_minus"),
        gamma_from_json(j.at("gamma_plus"), "two_valued gamma_plus"));
  }
  if (cat == "axis_profile") {
    require_keys(j, {"category", "axis", "tail_minus", "tail_plus", "h1",
                     "middle"},
                 "axis_profile coefficient");
    return Coefficient::axis_profile(
        j.at("axis").get<int>(), j.at("tail_minus").get<double>(),
        j.at("tail_plus").get<double>(), j.value("h1", std::int64_t{0}),
        j.value("middle", std::vector<double>{}));
  }
  if (cat == "semi_periodic") {
    require_keys(j, {"category", "period", "table", "envelope", "sample",
                     "scale", "offset", "product"},
                 "semi_periodic coefficient");
    Point period = point_from_json(j.at("period"), "semi_periodic coefficient");
    auto [lo, hi] = envelope_from_json(j.at("envelope"), "semi_periodic coefficient");
    double scale, offset;
    std::string sample;
    auto eval = so_eval_from(j, lo, hi, &scale, &offset, &sample);
    return Coefficient::semi_periodic(
        period, table_from_json(j.at("table"), period, "semi_periodic coefficient"),
        eval, lo, hi, j.value("product", false));
  }
  throw std::invalid_argument("coefficient: unknown category '" + cat + "'");
}

LatticeOperator operator_from_json(const json& j) {
  require_keys(j, {"dim", "terms"}, "operator description");
  if (!j.contains("dim") || !j.contains("terms"))
    throw std::invalid_argument("operator description: dim and terms required");
  int dim = j.at("dim").get<int>();
  if (dim < 1) throw std::invalid_argument("operator description: dim < 1");
  LatticeOperator a(dim);
  for (const json& term : j.at("terms")) {
    require_keys(term, {"shift", "coef"}, "operator term");
    Point shift = point_from_json(term.at("shift"), "operator term shift");
    if (shift.size() != dim)
      throw std::invalid_argument("operator term shift: wrong dimension");
    a.add_term(shift, coefficient_from_json(term.at("coef")));
  }
  return a;
}

json canonical_description(const json& j) {
  operator_from_json(j);  // full validation
  json out;
  out["dim"] = j.at("dim");
  out["terms"] = json::array();
  for (const json& term : j.at("terms")) {
    json coef = term.at("coef");
    std::string cat = coef.at("category").get<std::string>();
    if (cat == "so" || cat == "semi_periodic") {
      auto [lo, hi] = envelope_from_json(coef.at("envelope"), "envelope");
      if (!coef.contains("sample")) coef["sample"] = "sqrt_sin";
      if (!coef.contains("offset")) coef["offset"] = 0.5 * (lo + hi);
      if (!coef.contains("scale")) coef["scale"] = 0.5 * (hi - lo);
      if (cat == "semi_periodic" && !coef.contains("product"))
        coef["product"] = false;
    }
    if (cat == "axis_profile") {
      if (!coef.contains("h1")) coef["h1"] = 0;
      if (!coef.contains("middle")) coef["middle"] = json::array();
    }
    out["terms"].push_back({{"shift", term.at("shift")}, {"coef", coef}});
  }
  return out;
}

json coverage_to_json(const CoverageReport& r) {
  json out;
  out["predicted"] = spectrum_to_json(r.predicted);
  out["delta"] = r.delta;
  out["coverage_fraction"] = r.coverage_fraction;
  out["eigenvalue_count"] = r.eigenvalues.size();
  out["eigenvalues"] = r.eigenvalues;
  json outliers = json::array();
  for (const Outlier& o : r.outliers)
    outliers.push_back(
        {{"value", o.value}, {"spread", o.spread}, {"stable", o.stable}});
  out["outliers"] = outliers;
  return out;
}

namespace {

SampledPotential potential_from_json(const json& j, const std::string& where) {
  SampledPotential w;
  if (j.is_null()) return w;
  require_keys(j, {"radius", "points"}, where);
  w.radius = j.value("radius", 0);
  if (w.radius < 0) throw std::invalid_argument(where + ": radius < 0");
  for (const json& pt : j.value("points", json::array())) {
    require_keys(pt, {"x", "v"}, where + " point");
    Point x = point_from_json(pt.at("x"), where + " point");
    if (x.size() != 3)
      throw std::invalid_argument(where + ": points must lie in Z^3");
    w.values[x] = pt.at("v").get<double>();
  }
  return w;
}

}  // namespace

ThreeBodyProblem three_body_from_json(const json& j) {
  require_keys(j, {"m1", "m2", "W1", "W2", "W12", "decay_tol"},
               "three-body problem");
  ThreeBodyProblem p;
  p.m1 = j.at("m1").get<double>();
  p.m2 = j.at("m2").get<double>();
  p.W1 = potential_from_json(j.value("W1", json()), "W1");
  p.W2 = potential_from_json(j.value("W2", json()), "W2");
  p.W12 = potential_from_json(j.value("W12", json()), "W12");
  p.decay_tol = j.value("decay_tol", 1e-12);
  p.validate();
  return p;
}

void write_band_csv(std::ostream& os, const BandSample& bands) {
  const int dim = bands.grid.dim();
  const long d = bands.values.cols();
  for (int k = 0; k < dim; ++k) os << "theta_" << (k + 1) << ",";
  for (long b = 0; b < d; ++b) os << "band_" << (b + 1) << (b + 1 < d ? "," : "");
  os << "\n";
  char buf[40];
  for (long i = 0; i < bands.grid.total(); ++i) {
    Eigen::VectorXd theta = bands.grid.theta(i);
    for (int k = 0; k < dim; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", theta[k]);
      os << buf << ",";
    }
    for (long b = 0; b < d; ++b) {
      std::snprintf(buf, sizeof buf, "%.17g", bands.values(i, b));
      os << buf << (b + 1 < d ? "," : "");
    }
    os << "\n";
  }
}

}  // namespace latspec
