#ifndef LATSPEC_THREEBODY_HPP
#define LATSPEC_THREEBODY_HPP

#include "latspec/oracle.hpp"
#include "latspec/operator.hpp"

namespace latspec {

// Real-valued decaying potential on Z^3, given by samples on the cube of
// radius `radius`; zero outside.
struct SampledPotential {
  int radius = 0;
  std::map<Point, double, PointLess> values;

  double operator()(const Point& x) const;
  bool is_zero() const;
  double min_value() const;  // over the samples, tail value 0 included
  double max_value() const;
};

SampledPotential zero_potential();
SampledPotential delta_potential(double strength);  // strength * delta_0

// Three-particle Hamiltonian data: two masses and the three pair
// potentials W_1, W_2, W_12 on Z^3. The abbreviation m = 6/m_1 + 6/m_2
// is the top of the free spectrum [0, m].
struct ThreeBodyProblem {
  double m1 = 1.0;
  double m2 = 1.0;
  SampledPotential W1, W2, W12;
  double decay_tol = 1e-12;

  double m() const { return 6.0 / m1 + 6.0 / m2; }
  void validate() const;  // masses > 0, decay on the sample shell
};

// One-body companion operator (1/(2 m_j)) Delta_3 + W_j on l^2(Z^3).
LatticeOperator one_body_operator(const ThreeBodyProblem& p, int j);

// Full 6-D interaction operator
// (1/(2 m_1)) Delta (x) I + (1/(2 m_2)) I (x) Delta + W_12(x1 - x2).
LatticeOperator interaction_operator(const ThreeBodyProblem& p);

// sp(H_j) = [0, 6/m_other] (+) sp((1/(2 m_j)) Delta + W_j), the one-body
// spectrum being [0, 6/m_j] plus its stable discrete eigenvalues.
SpectrumSet subsystem_spectrum(const ThreeBodyProblem& p, int j,
                               const OracleConfig& oracle_cfg);

// Best-effort spectrum of the non-separable pair operator H_12: always
// contains [0, m]; stable extremal outliers of small 6-D truncations are
// appended as points. When no truncation size is feasible the result is
// the guaranteed core [0, m] and *bounds_only is set.
SpectrumSet interaction_spectrum(const ThreeBodyProblem& p,
                                 const OracleConfig& oracle_cfg,
                                 bool* bounds_only = nullptr);

// Union sp(H_1) u sp(H_2) u sp(H_12), normalized.
SpectrumSet ess_spectrum_three_body(const ThreeBodyProblem& p,
                                    const OracleConfig& oracle_cfg);

// Inner approximation of [inf sp, sup sp] from extremal Ritz values and
// random Rayleigh quotients of the truncation at radius L.
Interval rayleigh_bounds(const LatticeOperator& a, int L, int trials,
                         unsigned seed = 12345);

// Closed-form estimates: inf over the three potentials, and the maximal
// potential sup shifted by m.
std::pair<double, double> bounds_formula(const ThreeBodyProblem& p);

}  // namespace latspec

#endif  // LATSPEC_THREEBODY_HPP
