#include <doctest.h>

#include "latspec/threebody.hpp"

using namespace latspec;

TEST_CASE("free problems give exactly [0, m]") {
  OracleConfig cfg;
  cfg.Ls = {3, 4};
  for (auto [m1, m2] : {std::pair{1.0, 1.0}, {0.5, 0.25}, {2.0, 0.7}}) {
    ThreeBodyProblem p;
    p.m1 = m1;
    p.m2 = m2;
    SpectrumSet s = ess_spectrum_three_body(p, cfg);
    REQUIRE(s.size() == 1);
    CHECK(s.components()[0].lo == 0.0);
    CHECK(s.components()[0].hi == doctest::Approx(6.0 / m1 + 6.0 / m2));
  }
}

TEST_CASE("doubling both masses halves m") {
  ThreeBodyProblem p;
  p.m1 = 0.8;
  p.m2 = 1.3;
  ThreeBodyProblem q = p;
  q.m1 *= 2.0;
  q.m2 *= 2.0;
  CHECK(q.m() == doctest::Approx(0.5 * p.m()));
  OracleConfig cfg;
  cfg.Ls = {3, 4};
  CHECK(ess_spectrum_three_body(q, cfg).max() ==
        doctest::Approx(0.5 * ess_spectrum_three_body(p, cfg).max()));
}

TEST_CASE("problem validation") {
  ThreeBodyProblem p;
  p.m1 = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.m1 = 1.0;
  p.W1.radius = 1;
  Point far(3);
  far << 5, 0, 0;
  p.W1.values[far] = 0.3;
  CHECK_THROWS_WITH(p.validate(), "decay violation");
  p.W1.values[far] = 1e-14;  // inside the declared decay tolerance
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("subsystem without potential is the free interval") {
  ThreeBodyProblem p;
  p.m1 = 0.5;
  p.m2 = 1.0;
  OracleConfig cfg;
  cfg.Ls = {3, 4};
  SpectrumSet s1 = subsystem_spectrum(p, 1, cfg);
  REQUIRE(s1.size() == 1);
  CHECK(s1.components()[0].hi == doctest::Approx(12.0 + 6.0));
}

TEST_CASE("weak potentials leave no stable discrete eigenvalues") {
  ThreeBodyProblem p;
  p.W2 = delta_potential(-0.2);  // far below the 3-D binding threshold
  OracleConfig cfg;
  cfg.Ls = {4, 5, 6};
  SpectrumSet s = subsystem_spectrum(p, 2, cfg);
  REQUIRE(s.size() == 1);
  CHECK(s.components()[0].lo == 0.0);
  CHECK(s.components()[0].hi == doctest::Approx(12.0));
}

TEST_CASE("interaction spectrum of a free pair is the core interval") {
  ThreeBodyProblem p;
  OracleConfig cfg;
  cfg.Ls = {3, 4};
  bool bounds_only = true;
  SpectrumSet s = interaction_spectrum(p, cfg, &bounds_only);
  CHECK(!bounds_only);
  REQUIRE(s.size() == 1);
  CHECK(s.components()[0].lo == 0.0);
  CHECK(s.components()[0].hi == doctest::Approx(12.0));
}

TEST_CASE("infeasible truncation sizes are flagged bounds-only") {
  ThreeBodyProblem p;
  p.W12 = delta_potential(-1.0);
  OracleConfig cfg;
  cfg.Ls = {50, 100};  // hopeless in six dimensions
  bool bounds_only = false;
  SpectrumSet s = interaction_spectrum(p, cfg, &bounds_only);
  CHECK(bounds_only);
  CHECK(subset_of(normalize({Interval(0.0, p.m())}, 0.0), s, 1e-12));
}

TEST_CASE("rayleigh bounds") {
  // c I -> [c, c]
  LatticeOperator id3 = scale(identity(3), -2.5);
  Interval b = rayleigh_bounds(id3, 3, 5);
  CHECK(b.lo == doctest::Approx(-2.5));
  CHECK(b.hi == doctest::Approx(-2.5));
  // 1-D laplacian at L=500: inner approximation of [0, 4] with tight ends
  Interval d = rayleigh_bounds(laplacian(1), 500, 5);
  CHECK(d.lo >= -1e-12);
  CHECK(d.hi <= 4.0 + 1e-12);
  CHECK(d.lo <= 1e-3);
  CHECK(d.hi >= 4.0 - 1e-3);
}

TEST_CASE("rayleigh bounds of a one-body operator respect the potential") {
  ThreeBodyProblem p;
  p.m1 = 0.75;
  p.W1 = delta_potential(-2.0);
  Point x(3);
  x << 1, 0, 0;
  p.W1.values[x] = 1.0;
  LatticeOperator h = one_body_operator(p, 1);
  Interval b = rayleigh_bounds(h, 6, 8);
  CHECK(b.lo >= p.W1.min_value() - 1e-9);
  CHECK(b.hi <= p.W1.max_value() + 6.0 / p.m1 + 1e-9);
}

TEST_CASE("bounds formula") {
  ThreeBodyProblem p;
  CHECK(bounds_formula(p) == std::pair{0.0, p.m()});
  p.W1 = delta_potential(-3.0);
  p.W2 = delta_potential(-1.0);
  p.W12 = delta_potential(-0.5);
  auto [lo, hi] = bounds_formula(p);
  CHECK(lo == -3.0);
  CHECK(hi == p.m());  // all sups are 0
}

TEST_CASE("separable free operator: 6-D ground energy doubles the 3-D one") {
  ThreeBodyProblem p;
  TruncationConfig t3;
  t3.L = 3;
  t3.mode = TruncationConfig::Mode::Extremal;
  TruncatedMatrix m3 = truncate(one_body_operator(p, 1), t3);
  std::vector<double> r3 = lanczos_extremal(m3, 2, 7);
  TruncatedMatrix m6 = truncate(interaction_operator(p), t3);
  std::vector<double> r6 = lanczos_extremal(m6, 2, 7);
  double g3 = *std::min_element(r3.begin(), r3.end());
  double g6 = *std::min_element(r6.begin(), r6.end());
  CHECK(std::abs(g6 - 2.0 * g3) < 1e-8);
}
