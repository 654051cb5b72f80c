#ifndef LATSPEC_SYMBOL_HPP
#define LATSPEC_SYMBOL_HPP

#include "latspec/operator.hpp"

namespace latspec {

// Constant-coefficient (translation-invariant) view of an operator.
struct ConstantOperatorView {
  int dim;
  std::map<Point, cd, PointLess> terms;
};

// Throws "not translation invariant" if a non-constant coefficient is present.
ConstantOperatorView constant_view(const LatticeOperator& a);

// Fourier symbol  sum_alpha a_alpha e^{-i<alpha,theta>}.
cd symbol_eval(const ConstantOperatorView& a, const Eigen::VectorXd& theta);

TorusGrid default_symbol_grid(int dim);

// Range of the (real) symbol as a single interval. Uses the exact closed
// form [c, c + 4*sum w_k] when the operator matches the weighted-Laplacian
// template c*I + sum w_k (2I - V_{e_k} - V_{-e_k}) with w_k >= 0; otherwise
// grid sampling with golden-section refinement of the extrema.
SpectrumSet spectrum_constant(const ConstantOperatorView& a,
                              const TorusGrid& grid,
                              double refine_tol = 1e-10);

PointCloud range_cloud(const ConstantOperatorView& a, const TorusGrid& grid);

}  // namespace latspec

#endif  // LATSPEC_SYMBOL_HPP
