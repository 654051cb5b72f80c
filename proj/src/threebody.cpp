#include "latspec/threebody.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace latspec {

double SampledPotential::operator()(const Point& x) const {
  auto it = values.find(x);
  return it == values.end() ? 0.0 : it->second;
}

bool SampledPotential::is_zero() const {
  return std::all_of(values.begin(), values.end(),
                     [](const auto& kv) { return kv.second == 0.0; });
}

double SampledPotential::min_value() const {
  double m = 0.0;  // decaying tail
  for (const auto& [x, v] : values) m = std::min(m, v);
  return m;
}

double SampledPotential::max_value() const {
  double m = 0.0;
  for (const auto& [x, v] : values) m = std::max(m, v);
  return m;
}

SampledPotential zero_potential() { return SampledPotential{}; }

SampledPotential delta_potential(double strength) {
  SampledPotential w;
  w.radius = 1;
  w.values[Point::Zero(3)] = strength;
  return w;
}

void ThreeBodyProblem::validate() const {
  if (m1 <= 0 || m2 <= 0)
    throw std::invalid_argument("ThreeBodyProblem: masses must be positive");
  for (const SampledPotential* w : {&W1, &W2, &W12}) {
    Cube cube{3, w->radius};
    for (const auto& [x, v] : w->values) {
      if (x.size() != 3)
        throw std::invalid_argument("ThreeBodyProblem: potentials live on Z^3");
      if (!cube.contains(x) && std::abs(v) > decay_tol)
        throw std::runtime_error("decay violation");
    }
  }
}

LatticeOperator one_body_operator(const ThreeBodyProblem& p, int j) {
  if (j != 1 && j != 2)
    throw std::invalid_argument("one_body_operator: j must be 1 or 2");
  p.validate();
  double mass = (j == 1) ? p.m1 : p.m2;
  const SampledPotential& w = (j == 1) ? p.W1 : p.W2;
  LatticeOperator h = scale(laplacian(3), 1.0 / (2.0 * mass));
  h.add_term(Point::Zero(3),
             Coefficient::sampled([w](const Point& x) { return cd(w(x)); },
                                  std::max(std::abs(w.min_value()),
                                           std::abs(w.max_value()))));
  return h;
}

LatticeOperator interaction_operator(const ThreeBodyProblem& p) {
  p.validate();
  LatticeOperator h(6);
  double d1 = 1.0 / (2.0 * p.m1), d2 = 1.0 / (2.0 * p.m2);
  h.add_term(Point::Zero(6), Coefficient::constant(6.0 * d1 + 6.0 * d2));
  for (int k = 0; k < 6; ++k) {
    double hop = (k < 3) ? d1 : d2;
    Point e = Point::Zero(6);
    e[k] = 1;
    h.add_term(e, Coefficient::constant(-hop));
    e[k] = -1;
    h.add_term(e, Coefficient::constant(-hop));
  }
  const SampledPotential w = p.W12;
  h.add_term(Point::Zero(6),
             Coefficient::sampled(
                 [w](const Point& x) {
                   return cd(w(x.head(3) - x.tail(3)));
                 },
                 std::max(std::abs(w.min_value()), std::abs(w.max_value()))));
  return h;
}

namespace {

// Discrete eigenvalues of a truncation family by the stability rule used
// throughout this module: present at every size, successive values within
// step_tol, separated from the base interval by more than gap_tol.
std::vector<double> stable_discrete(const LatticeOperator& h,
                                    const Interval& base,
                                    const std::vector<int>& Ls,
                                    const OracleConfig& cfg,
                                    double step_tol = 1e-4,
                                    double gap_tol = 1e-3) {
  auto outside = [&](double x) {
    return x < base.lo - gap_tol || x > base.hi + gap_tol;
  };
  std::vector<std::vector<double>> candidates;
  for (int L : Ls) {
    TruncationConfig tc = cfg.at(L);
    tc.mode = TruncationConfig::Mode::Extremal;
    std::vector<double> eigs = eigenvalues(truncate(h, tc), tc);
    std::vector<double> keep;
    for (double x : eigs)
      if (outside(x)) keep.push_back(x);
    candidates.push_back(std::move(keep));
  }
  std::vector<double> stable;
  if (candidates.empty()) return stable;
  for (double x : candidates.back()) {
    double prev = x;
    bool ok = true;
    for (std::size_t i = candidates.size(); i-- > 1;) {
      const auto& at_smaller = candidates[i - 1];
      if (at_smaller.empty()) {
        ok = false;
        break;
      }
      auto it = std::min_element(at_smaller.begin(), at_smaller.end(),
                                 [&](double a, double b) {
                                   return std::abs(a - prev) < std::abs(b - prev);
                                 });
      if (std::abs(*it - prev) >= step_tol) {
        ok = false;
        break;
      }
      prev = *it;
    }
    if (ok) stable.push_back(x);
  }
  std::sort(stable.begin(), stable.end());
  stable.erase(std::unique(stable.begin(), stable.end(),
                           [&](double a, double b) {
                             return std::abs(a - b) < step_tol;
                           }),
               stable.end());
  return stable;
}

}  // namespace

SpectrumSet subsystem_spectrum(const ThreeBodyProblem& p, int j,
                               const OracleConfig& oracle_cfg) {
  p.validate();
  double mass = (j == 1) ? p.m1 : p.m2;
  double mass_other = (j == 1) ? p.m2 : p.m1;
  Interval base(0.0, 6.0 / mass);
  Interval translate(0.0, 6.0 / mass_other);

  const SampledPotential& w = (j == 1) ? p.W1 : p.W2;
  std::vector<Interval> one_body = {base};
  if (!w.is_zero()) {
    LatticeOperator h = one_body_operator(p, j);
    for (double lam : stable_discrete(h, base, oracle_cfg.Ls, oracle_cfg))
      one_body.emplace_back(lam, lam);
  }
  return minkowski_sum(normalize(std::move(one_body), 0.0), translate);
}

SpectrumSet interaction_spectrum(const ThreeBodyProblem& p,
                                 const OracleConfig& oracle_cfg,
                                 bool* bounds_only) {
  p.validate();
  if (bounds_only) *bounds_only = false;
  Interval core(0.0, p.m());
  if (p.W12.is_zero()) return normalize({core}, 0.0);

  // 6-D truncations grow as (2L+1)^6; keep only feasible sizes.
  std::vector<int> Ls;
  for (int L : oracle_cfg.Ls) {
    double n = std::pow(2.0 * L + 1.0, 6);
    if (L >= 1 && n <= 2.2e6) Ls.push_back(L);
  }
  std::sort(Ls.begin(), Ls.end());
  Ls.erase(std::unique(Ls.begin(), Ls.end()), Ls.end());
  if (Ls.size() < 2) {
    // Requested sizes are infeasible in six dimensions; fall back to the
    // smallest usable pair and flag the result as an estimate.
    Ls = {3, 4};
    if (bounds_only) *bounds_only = true;
  }

  std::vector<Interval> parts = {core};
  LatticeOperator h = interaction_operator(p);
  for (double lam : stable_discrete(h, core, Ls, oracle_cfg))
    parts.emplace_back(lam, lam);
  return normalize(std::move(parts), 0.0);
}

SpectrumSet ess_spectrum_three_body(const ThreeBodyProblem& p,
                                    const OracleConfig& oracle_cfg) {
  SpectrumSet s1 = subsystem_spectrum(p, 1, oracle_cfg);
  SpectrumSet s2 = subsystem_spectrum(p, 2, oracle_cfg);
  SpectrumSet s12 = interaction_spectrum(p, oracle_cfg);
  return set_union(set_union(s1, s2), s12);
}

Interval rayleigh_bounds(const LatticeOperator& a, int L, int trials,
                         unsigned seed) {
  TruncationConfig tc;
  tc.L = L;
  tc.mode = TruncationConfig::Mode::Extremal;
  tc.seed = seed;
  TruncatedMatrix m = truncate(a, tc);
  if (!m.hermitian) throw std::runtime_error("non-Hermitian truncation");

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double x : lanczos_extremal(m, 4, seed)) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXcd v(m.n);
    for (long i = 0; i < m.n; ++i) v[i] = cd(gauss(rng), 0.0);
    double q = std::real(v.dot(m.multiply(v))) / std::real(v.dot(v));
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return Interval(lo, hi);
}

std::pair<double, double> bounds_formula(const ThreeBodyProblem& p) {
  double inf_est = std::min({p.W1.min_value(), p.W2.min_value(),
                             p.W12.min_value()});
  double sup_est = std::max({p.W1.max_value(), p.W2.max_value(),
                             p.W12.max_value()}) +
                   p.m();
  return {inf_est, sup_est};
}

}  // namespace latspec
