// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its own tolerances and truncation sizes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "latspec/floquet.hpp"
#include "latspec/limitops.hpp"
#include "latspec/symbol.hpp"
#include "latspec/threebody.hpp"

using namespace latspec;

namespace {

int failures = 0;

void run(int idx, const char* name, double budget_s,
         const std::function<bool()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
  if (budget_s > 0 && dt > budget_s) {
    ok = false;
    note += " (over time budget)";
  }
  std::printf("criterion %d (%s): %s [%.1f s]%s\n", idx, name,
              ok ? "PASS" : "FAIL", dt, note.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

Point pt1(int x) {
  Point p(1);
  p[0] = x;
  return p;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool same_set(const SpectrumSet& a, const SpectrumSet& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!close(a.components()[i].lo, b.components()[i].lo, tol) ||
        !close(a.components()[i].hi, b.components()[i].hi, tol))
      return false;
  return true;
}

bool free_laplacian() {
  for (int n : {1, 2, 3}) {
    SpectrumSet s =
        spectrum_constant(constant_view(laplacian(n)), default_symbol_grid(n));
    if (s.size() != 1 || s.components()[0].lo != 0.0 ||
        s.components()[0].hi != 4.0 * n)
      return false;
  }
  OracleConfig cfg;
  cfg.Ls = {500, 1000, 2000};
  cfg.delta = 0.01;
  CoverageReport rep =
      coverage(normalize({Interval(0.0, 4.0)}, 0.0), laplacian(1), cfg);
  return rep.coverage_fraction == 1.0;
}

LatticeOperator jacobi03() {
  LatticeOperator a = laplacian(1);
  Point r(1);
  r[0] = 2;
  a.add_term(Point::Zero(1), Coefficient::periodic(r, {cd(-2.0), cd(1.0)}));
  return a;
}

bool periodic_jacobi() {
  Point r(1);
  r[0] = 2;
  LatticeOperator a = jacobi03();
  SpectrumSet s = periodic_spectrum(build_symbol(a, r), default_band_grid(1));
  double closed[4] = {-1.0, 0.0, 3.0, 4.0};
  if (s.size() != 2) return false;
  if (!close(s.components()[0].lo, closed[0], 1e-8) ||
      !close(s.components()[0].hi, closed[1], 1e-8) ||
      !close(s.components()[1].lo, closed[2], 1e-8) ||
      !close(s.components()[1].hi, closed[3], 1e-8))
    return false;

  // finite sections at L = 2000, bulk spectrum as merged eigenvalue clusters
  TruncationConfig tc;
  tc.L = 2000;
  std::vector<double> eigs = eigenvalues(truncate(a, tc), tc);
  std::vector<Interval> points;
  points.reserve(eigs.size());
  for (double x : eigs) points.emplace_back(x, x);
  SpectrumSet sections = normalize(std::move(points), 0.01);
  if (hausdorff_distance(s, sections) > 0.02) return false;

  // no stable outlier inside the gap (0, 3)
  OracleConfig cfg;
  cfg.Ls = {500, 1000, 2000};
  cfg.delta = 0.01;
  CoverageReport rep = coverage(s, a, cfg);
  for (const Outlier& o : rep.outliers)
    if (o.stable && o.value > 0.0 && o.value < 3.0) return false;
  return true;
}

bool two_valued() {
  LatticeOperator a = laplacian(1);
  a.add_term(Point::Zero(1),
             Coefficient::two_valued_quadratic(0.0, 5.0, {0, 0, 1}, {0, 1, 1}));
  OracleConfig probe;
  SpectrumSet predicted =
      ess_spectrum_general(a, default_symbol_grid(1), probe);
  SpectrumSet expected =
      normalize({Interval(0.0, 4.0), Interval(5.0, 9.0)}, 0.0);
  if (!same_set(predicted, expected, 0.0)) return false;

  OracleConfig cfg;
  cfg.Ls = {1250, 2500, 5000};
  cfg.delta = 0.05;
  CoverageReport rep = coverage(predicted, a, cfg);
  if (rep.coverage_fraction < 0.99) return false;

  // the four limit coefficient tables on a radius-8 window
  Coefficient p =
      Coefficient::two_valued_quadratic(0.0, 5.0, {0, 0, 1}, {0, 1, 1});
  auto seq = [](std::function<long(int)> f) {
    return std::function<Point(int)>(
        [f](int j) { return pt1(static_cast<int>(f(j))); });
  };
  struct Case {
    std::function<Point(int)> g;
    std::function<double(int)> table;
  } cases[] = {
      {seq([](int j) { return static_cast<long>(j) * j + j / 2; }),
       [](int) { return 0.0; }},
      {seq([](int j) { return static_cast<long>(j) * j - j / 2; }),
       [](int) { return 5.0; }},
      {seq([](int j) { return static_cast<long>(j) * j; }),
       [](int x) { return x < 0 ? 5.0 : 0.0; }},
      {seq([](int j) { return static_cast<long>(j) * j + j; }),
       [](int x) { return x > 0 ? 5.0 : 0.0; }},
  };
  for (const Case& c : cases) {
    PartialLimitReport rep2 = partial_limit_along(p, c.g, 8, 200, 1e-9);
    if (!rep2.converged) return false;
    for (int x = -8; x <= 8; ++x)
      if (!close(rep2.limit_table.at(pt1(x)).real(), c.table(x), 1e-9))
        return false;
  }
  return true;
}

bool gap_closing() {
  SpectrumSet bands = normalize({Interval(-1.0, 0.0), Interval(3.0, 4.0)}, 0.0);
  SpectrumSet closed = ess_spectrum_semiperiodic(bands, 0.0, 3.0);
  if (closed.size() != 1 || closed.components()[0].lo != -1.0 ||
      closed.components()[0].hi != 7.0)
    return false;
  SpectrumSet open = ess_spectrum_semiperiodic(bands, 0.0, 1.0);
  return open.size() == 2 && open.components()[0].lo == -1.0 &&
         open.components()[0].hi == 1.0 && open.components()[1].lo == 3.0 &&
         open.components()[1].hi == 5.0;
}

bool waveguide() {
  OracleConfig cfg;
  cfg.Ls = {200, 400, 800};
  cfg.delta = 0.01;
  Coefficient profile = Coefficient::axis_profile(1, 0.0, 0.0, 0, {-5, -5, -5});
  SpectrumSet s =
      ess_spectrum_waveguide(2, Interval(0.0, 0.0), Interval(0.0, 0.0),
                             {profile}, cfg);
  if (!subset_of(normalize({Interval(0.0, 8.0)}, 0.0), s, 1e-12)) return false;

  // stable 1-D eigenvalues below the half-line spectrum
  LatticeOperator line = laplacian(1);
  line.add_term(Point::Zero(1),
                Coefficient::axis_profile(0, 0.0, 0.0, 0, {-5, -5, -5}));
  SpectrumSet sigma = normalize({Interval(0.0, 4.0)}, 0.0);
  std::vector<Outlier> eigs = discrete_eigs(line, sigma, cfg);
  if (eigs.empty()) return false;
  std::vector<Interval> parts = {Interval(0.0, 8.0)};
  for (const Outlier& o : eigs) {
    if (!(o.value < 0.0)) return false;
    if (!(o.spread < 1e-6)) return false;
    parts.emplace_back(o.value, o.value + 4.0);
  }
  return same_set(s, normalize(std::move(parts), kDefaultMergeTol), 1e-12);
}

bool three_body() {
  OracleConfig small;
  small.Ls = {3, 4};
  for (auto [m1, m2] : {std::pair{1.0, 1.0}, {0.5, 0.25}, {2.0, 0.7}}) {
    ThreeBodyProblem p;
    p.m1 = m1;
    p.m2 = m2;
    SpectrumSet s = ess_spectrum_three_body(p, small);
    if (s.size() != 1 || s.components()[0].lo != 0.0 ||
        !close(s.components()[0].hi, p.m(), 1e-12))
      return false;
  }

  // attractive delta potential on the second subsystem
  ThreeBodyProblem p;
  p.m1 = 0.5;
  p.m2 = 0.5;
  p.W2 = delta_potential(-8.0);
  OracleConfig cfg;
  cfg.Ls = {6, 8, 10};
  SpectrumSet s2 = subsystem_spectrum(p, 2, cfg);
  double lam1 = s2.min();
  if (!(lam1 < -1.0)) return false;
  SpectrumSet expect = normalize(
      {Interval(0.0, 24.0), Interval(lam1, lam1 + 12.0)}, kDefaultMergeTol);
  if (!same_set(s2, expect, 1e-12)) return false;

  // ground eigenvalue stable across the three truncation radii
  LatticeOperator h2 = one_body_operator(p, 2);
  double lo = 1e300, hi = -1e300;
  for (int L : cfg.Ls) {
    TruncationConfig tc = cfg.at(L);
    tc.mode = TruncationConfig::Mode::Extremal;
    std::vector<double> ritz = eigenvalues(truncate(h2, tc), tc);
    double g = *std::min_element(ritz.begin(), ritz.end());
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  if (hi - lo > 1e-3) return false;

  // inclusion bounds on random problems
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> mass(0.4, 2.0);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::uniform_int_distribution<int> coord(-1, 1);
  for (int t = 0; t < 20; ++t) {
    ThreeBodyProblem q;
    q.m1 = mass(rng);
    q.m2 = mass(rng);
    for (SampledPotential* w : {&q.W1, &q.W2, &q.W12}) {
      w->radius = 1;
      int pts = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < pts; ++i) {
        Point x(3);
        x << coord(rng), coord(rng), coord(rng);
        w->values[x] = val(rng);
      }
    }
    SpectrumSet s = ess_spectrum_three_body(q, small);
    double inf_w = std::min({q.W1.min_value(), q.W2.min_value(),
                             q.W12.min_value()});
    double sup_w = std::max({q.W1.max_value(), q.W2.max_value(),
                             q.W12.max_value()});
    if (!subset_of(normalize({Interval(0.0, q.m())}, 0.0), s, 1e-9))
      return false;
    if (!subset_of(s, normalize({Interval(inf_w, sup_w + q.m())}, 0.0), 1e-9))
      return false;
  }
  return true;
}

bool algebra_suite() {
  std::mt19937 rng(97);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::uniform_int_distribution<int> shift(-2, 2);

  auto random_coef = [&](int dim) {
    if (rng() % 2) return Coefficient::constant(cd(unif(rng), unif(rng)));
    Point r(dim);
    long d = 1;
    for (int k = 0; k < dim; ++k) {
      r[k] = 1 + static_cast<int>(rng() % 3);
      d *= r[k];
    }
    std::vector<cd> table;
    for (long i = 0; i < d; ++i) table.emplace_back(unif(rng), unif(rng));
    return Coefficient::periodic(r, table);
  };
  auto random_op = [&](int dim) {
    LatticeOperator a(dim);
    for (int t = 0; t < 3; ++t) {
      Point s(dim);
      for (int k = 0; k < dim; ++k) s[k] = shift(rng);
      a.add_term(s, random_coef(dim));
    }
    return a;
  };
  auto random_fn = [&](int dim) {
    LatticeFunction u;
    for (int t = 0; t < 5; ++t) {
      Point x(dim);
      for (int k = 0; k < dim; ++k) x[k] = shift(rng);
      u[x] = cd(unif(rng), unif(rng));
    }
    return u;
  };
  auto diff = [](const LatticeFunction& u, const LatticeFunction& v) {
    double d = 0;
    for (const auto& [x, w] : u) {
      auto it = v.find(x);
      d = std::max(d, std::abs(w - (it == v.end() ? cd(0) : it->second)));
    }
    for (const auto& [x, w] : v)
      if (u.find(x) == u.end()) d = std::max(d, std::abs(w));
    return d;
  };

  for (int t = 0; t < 100; ++t) {
    int dim = 1 + (t % 2);
    Cube window{dim, 40};
    LatticeOperator a = random_op(dim), b = random_op(dim), c = random_op(dim);
    LatticeFunction u = random_fn(dim), v = random_fn(dim);

    if (diff(apply(compose(compose(a, b), c), u, window),
             apply(compose(a, compose(b, c)), u, window)) > 1e-12)
      return false;
    if (diff(apply(adjoint(adjoint(a)), u, window), apply(a, u, window)) >
        1e-12)
      return false;
    if (std::abs(inner_product(apply(a, u, window), v) -
                 inner_product(u, apply(adjoint(a), v, window))) > 1e-12)
      return false;
    if (wiener_norm(compose(a, b)) >
        wiener_norm(a) * wiener_norm(b) + 1e-12)
      return false;

    // constant-coefficient pair: symbol multiplicativity
    LatticeOperator ca(dim), cb(dim);
    for (int k = 0; k < 2; ++k) {
      Point s(dim), s2(dim);
      for (int j = 0; j < dim; ++j) {
        s[j] = shift(rng);
        s2[j] = shift(rng);
      }
      ca.add_term(s, Coefficient::constant(cd(unif(rng), unif(rng))));
      cb.add_term(s2, Coefficient::constant(cd(unif(rng), unif(rng))));
    }
    ConstantOperatorView va = constant_view(ca), vb = constant_view(cb);
    ConstantOperatorView vc = constant_view(compose(ca, cb));
    Eigen::VectorXd theta(dim);
    for (int j = 0; j < dim; ++j) theta[j] = std::abs(unif(rng));
    if (std::abs(symbol_eval(vc, theta) -
                 symbol_eval(va, theta) * symbol_eval(vb, theta)) > 1e-12)
      return false;

    // factored Schrodinger form against its expansion
    Eigen::VectorXd masses(dim);
    std::vector<Coefficient> mag;
    for (int k = 0; k < dim; ++k) {
      masses[k] = 0.5 + std::abs(unif(rng));
      double amp = unif(rng);
      mag.push_back(Coefficient::sampled(
          [amp, k](const Point& x) {
            return std::polar(1.0, amp * std::sin(0.1 * x[k]));
          },
          1.0));
    }
    Coefficient phi = Coefficient::constant(cd(unif(rng)));
    LatticeOperator h = build_schrodinger(dim, masses, mag, phi);
    LatticeOperator ref(dim);
    ref.add_term(Point::Zero(dim), phi);
    for (int k = 0; k < dim; ++k) {
      LatticeOperator left(dim), right(dim);
      Point e = Point::Zero(dim);
      const Coefficient& ak = mag[static_cast<std::size_t>(k)];
      e[k] = 1;
      left.add_term(e, Coefficient::constant(cd(1.0)));
      left.add_term(Point::Zero(dim),
                    Coefficient::sampled(
                        [ak](const Point& x) { return -ak(x); }, 1.0));
      e[k] = -1;
      right.add_term(e, Coefficient::constant(cd(1.0)));
      right.add_term(Point::Zero(dim),
                     Coefficient::sampled(
                         [ak](const Point& x) { return -std::conj(ak(x)); },
                         1.0));
      ref = add(ref, scale(compose(left, right), 1.0 / (2.0 * masses[k])));
    }
    if (diff(apply(h, u, window), apply(ref, u, window)) > 1e-12) return false;
  }
  return true;
}

bool negative_control() {
  OracleConfig cfg;
  cfg.Ls = {100, 200, 400};
  cfg.delta = 0.01;
  // deliberately wrong prediction for the free laplacian
  CoverageReport rep =
      coverage(normalize({Interval(1.0, 3.0)}, 0.0), laplacian(1), cfg);
  int stable = 0;
  for (const Outlier& o : rep.outliers) stable += o.stable ? 1 : 0;
  if (stable < 1) return false;
  // deliberately wrong prediction for the periodic operator: upper band only
  CoverageReport rep2 =
      coverage(normalize({Interval(3.0, 4.0)}, 0.0), jacobi03(), cfg);
  int stable2 = 0;
  for (const Outlier& o : rep2.outliers) stable2 += o.stable ? 1 : 0;
  return stable2 >= 1;
}

}  // namespace

int main() {
  run(1, "free laplacian closed form + oracle", 10.0, free_laplacian);
  run(2, "periodic jacobi bands", 60.0, periodic_jacobi);
  run(3, "two-valued potential", 120.0, two_valued);
  run(4, "gap closing", 5.0, gap_closing);
  run(5, "waveguide", 60.0, waveguide);
  run(6, "three-body", 600.0, three_body);
  run(7, "algebra suite", 60.0, algebra_suite);
  run(8, "negative controls", 30.0, negative_control);
  if (failures == 0) std::printf("all acceptance criteria passed\n");
  return failures == 0 ? 0 : 1;
}
