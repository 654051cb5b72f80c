#ifndef LATSPEC_FLOQUET_HPP
#define LATSPEC_FLOQUET_HPP

#include <Eigen/Dense>

#include "latspec/operator.hpp"

namespace latspec {

// The d x d matrix symbol of an r-periodic operator over the torus,
// d = prod r_j, basis in lexicographic order (first axis slowest).
class PeriodSymbol {
 public:
  PeriodSymbol(Point period, std::vector<std::pair<Point, Eigen::VectorXcd>> terms);

  const Point& period() const { return period_; }
  int d() const { return d_; }

  // sigma(theta) with t_j = e^{i theta_j}.
  Eigen::MatrixXcd operator()(const Eigen::VectorXd& theta) const;

  // max over sampled theta of ||sigma - sigma*||.
  double hermitian_defect(const TorusGrid& grid) const;

 private:
  Point period_;
  int d_;
  // shift alpha -> diagonal of mu(a_alpha), lexicographic.
  std::vector<std::pair<Point, Eigen::VectorXcd>> terms_;
};

// Builds the symbol of an operator whose coefficients are all constant or
// r-periodic (periods dividing r componentwise). Throws "period mismatch".
PeriodSymbol build_symbol(const LatticeOperator& a, const Point& r);

// Sorted eigenvalues of sigma(theta) per grid point (rows), Hermitian source.
struct BandSample {
  TorusGrid grid;
  Eigen::MatrixXd values;  // grid.total() x d, each row ascending
};

BandSample band_sample(const PeriodSymbol& p, const TorusGrid& grid);

TorusGrid default_band_grid(int dim);

// Union over k of [min_t lambda_k, max_t lambda_k], extrema refined.
SpectrumSet periodic_spectrum(const PeriodSymbol& p, const TorusGrid& grid,
                              double refine_tol = 1e-10);

struct InvertibilityResult {
  bool invertible;
  Eigen::VectorXd witness;  // argmin of |det sigma|
  double min_abs_det;
  double det_tol;
};

InvertibilityResult invertibility_check(const PeriodSymbol& p,
                                        const TorusGrid& grid);

// Max residual between T_r A T_r^{-1} and the block operator
// sum mu(a_alpha) Lambda^{-alpha} on random inputs over a finite window.
double conjugation_check(const LatticeOperator& a, const Point& r,
                         int window_radius, unsigned seed = 12345,
                         int trials = 4);

}  // namespace latspec

#endif  // LATSPEC_FLOQUET_HPP
