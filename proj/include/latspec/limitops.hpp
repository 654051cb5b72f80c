#ifndef LATSPEC_LIMITOPS_HPP
#define LATSPEC_LIMITOPS_HPP

#include "latspec/oracle.hpp"
#include "latspec/operator.hpp"

namespace latspec {

struct LimitMember {
  LatticeOperator op;
  std::string label;
};

// Finite enumeration of the limit operators of an operator with
// categorized coefficients. When an SO envelope is involved, the endpoint
// representatives are listed and `envelope_connected` records that the
// full family sweeps the connected envelope between them.
struct LimitOperatorFamily {
  std::vector<LimitMember> members;
  bool envelope_connected = false;
  std::vector<std::string> notes;
};

struct PartialLimitReport {
  bool converged = false;
  LatticeFunction limit_table;  // on the probe window, when converged
  double max_oscillation = 0;
  int window_radius = 0;
  int j_max = 0;
};

// Desk-scale check of strong convergence of translates of a coefficient
// along a sequence g tending to infinity: tail values c(x + g(j)) for
// j in [j_max/2, j_max] on the window; converged iff oscillation <= tol.
PartialLimitReport partial_limit_along(const Coefficient& c,
                                       const std::function<Point(int)>& g,
                                       int window_radius, int j_max = 200,
                                       double tol = 1e-9);

LimitOperatorFamily enumerate_limit_ops(const LatticeOperator& h);

// sp_ess of a Schrodinger operator with SO electric potential (envelope
// [m_phi, M_phi]) and unimodular-at-infinity SO magnetic potentials.
SpectrumSet ess_spectrum_so(double m_phi, double M_phi, int dim);

// Two-valued 1-D potential on Delta: [a, a+4] u [b, b+4].
SpectrumSet ess_spectrum_two_valued(double a, double b);

// Two-valued with slowly oscillating values: [m_a, M_a+4] u [m_b, M_b+4].
SpectrumSet ess_spectrum_two_valued_so(double m_a, double M_a, double m_b,
                                       double M_b);

// Periodic bands perturbed by an SO potential with envelope [m_psi, M_psi]:
// each band widens to [m_i + m_psi, M_i + M_psi].
SpectrumSet ess_spectrum_semiperiodic(const SpectrumSet& bands, double m_psi,
                                      double M_psi);

// Discrete waveguide on Z^N: envelope intervals of the half-space
// potentials plus, per transversal limit profile, the stable discrete
// eigenvalues of the 1-D operator Delta + profile widened by [0, 4(N-1)].
SpectrumSet ess_spectrum_waveguide(int dim, const Interval& env_plus,
                                   const Interval& env_minus,
                                   const std::vector<Coefficient>& profiles,
                                   const OracleConfig& oracle_cfg);

// Dispatch on the coefficient categories of H; union of the member spectra.
SpectrumSet ess_spectrum_general(const LatticeOperator& h,
                                 const TorusGrid& grid,
                                 const OracleConfig& oracle_cfg);

}  // namespace latspec

#endif  // LATSPEC_LIMITOPS_HPP
