#ifndef LATSPEC_ORACLE_HPP
#define LATSPEC_ORACLE_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "latspec/operator.hpp"

namespace latspec {

// Finite-section configuration: Dirichlet truncation to the cube [-L, L]^N.
struct TruncationConfig {
  enum class Mode { All, Extremal };
  int L = 100;
  Mode mode = Mode::All;
  int extremal_count = 8;
  double residual_tol = 1e-10;
  unsigned seed = 12345;
};

// Truncation of a lattice operator; real storage when all entries are real.
struct TruncatedMatrix {
  long n = 0;
  bool real = true;
  bool hermitian = false;
  Eigen::SparseMatrix<double> re;
  Eigen::SparseMatrix<cd> cx;

  double norm_estimate() const;
  Eigen::VectorXcd multiply(const Eigen::VectorXcd& v) const;
};

// Entry (x, x - alpha) = a_alpha(x) for x, x - alpha in the cube;
// references outside the cube are dropped (zero boundary).
TruncatedMatrix truncate(const LatticeOperator& a, const TruncationConfig& cfg);

// Sorted eigenvalues of a Hermitian truncation. Dispatches to a Sturm
// bisection solver for real symmetric tridiagonal matrices, a dense solver
// for small matrices, and Lanczos (extremal mode) otherwise.
std::vector<double> eigenvalues(const TruncatedMatrix& m,
                                const TruncationConfig& cfg);

// All eigenvalues of a symmetric tridiagonal matrix by Sturm-sequence
// bisection. diag has size n, offdiag size n-1.
std::vector<double> tridiagonal_eigenvalues(const Eigen::VectorXd& diag,
                                            const Eigen::VectorXd& offdiag,
                                            double tol = 1e-10);

// k smallest and k largest Ritz values by Lanczos with full
// reorthogonalization and deterministic seeding.
std::vector<double> lanczos_extremal(const TruncatedMatrix& m, int k,
                                     unsigned seed, int max_iter = 220,
                                     double tol = 1e-12);

struct OracleConfig {
  std::vector<int> Ls = {100, 200, 400};
  double delta = 0.01;
  TruncationConfig::Mode mode = TruncationConfig::Mode::All;
  int extremal_count = 8;
  double residual_tol = 1e-10;
  unsigned seed = 12345;

  TruncationConfig at(int L) const {
    return TruncationConfig{L, mode, extremal_count, residual_tol, seed};
  }
};

struct Outlier {
  double value;       // at the largest truncation size
  double spread;      // max pairwise distance across sizes
  bool stable;        // matched across all sizes (>= 3) with spread < 10*delta
};

// Comparison of a predicted spectrum with finite-section eigenvalues.
struct CoverageReport {
  SpectrumSet predicted;
  std::vector<double> eigenvalues;  // at the largest L
  double delta = 0;
  double coverage_fraction = 0;
  std::vector<Outlier> outliers;
};

CoverageReport coverage(const SpectrumSet& predicted, const LatticeOperator& a,
                        const OracleConfig& cfg);

// Stable outliers only: candidate discrete eigenvalues outside ess.
std::vector<Outlier> discrete_eigs(const LatticeOperator& a,
                                   const SpectrumSet& ess,
                                   const OracleConfig& cfg);

}  // namespace latspec

#endif  // LATSPEC_ORACLE_HPP
