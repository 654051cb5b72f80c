#ifndef LATSPEC_OPERATOR_HPP
#define LATSPEC_OPERATOR_HPP

#include <map>

#include "latspec/coefficient.hpp"
#include "latspec/core.hpp"

namespace latspec {

// Finitely supported function Z^N -> C.
using LatticeFunction = std::map<Point, cd, PointLess>;

// Centered cube window [-radius, radius]^dim.
struct Cube {
  int dim;
  int radius;
  bool contains(const Point& x) const {
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (std::abs(x[j]) > radius) return false;
    return true;
  }
};

// Finite shift series  A = sum_alpha a_alpha V_alpha  with bounded
// coefficient functions; an element of the Wiener algebra with finite
// support. Immutable after construction.
class LatticeOperator {
 public:
  using TermMap = std::map<Point, Coefficient, PointLess>;

  explicit LatticeOperator(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("LatticeOperator: dim < 1");
  }
  LatticeOperator(int dim, TermMap terms);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }

  // Adds coefficients at already-present shifts.
  void add_term(const Point& shift, Coefficient coef);

  // Largest |shift_j| over the support.
  int support_radius() const;

 private:
  int dim_;
  TermMap terms_;
};

// Shorthand builders.
LatticeOperator identity(int dim);
LatticeOperator shift_operator(const Point& g);
// Discrete Laplacian sum_k (2I - V_{e_k} - V_{-e_k}) on Z^N.
LatticeOperator laplacian(int dim);

// (Au)(x) = sum_alpha a_alpha(x) u(x - alpha) on the window.
// Throws "support escape" if supp(u) + supp(A) leaves the window.
LatticeFunction apply(const LatticeOperator& a, const LatticeFunction& u,
                      const Cube& window);

LatticeOperator compose(const LatticeOperator& a, const LatticeOperator& b);
LatticeOperator adjoint(const LatticeOperator& a);
LatticeOperator add(const LatticeOperator& a, const LatticeOperator& b);
LatticeOperator scale(const LatticeOperator& a, cd c);

// sum_alpha sup|a_alpha|; probe radius per the sampled-coefficient policy
// (10^3 per axis in 1-D, 10^2 otherwise) unless overridden.
double wiener_norm(const LatticeOperator& a, int probe_radius = -1);

int default_probe_radius(int dim);

// H = sum_k (1/2m_k)(V_{e_k} - a_k I)(V_{-e_k} - conj(a_k) I) + Phi I,
// expanded into shift-series terms.
LatticeOperator build_schrodinger(int dim, const Eigen::VectorXd& masses,
                                  const std::vector<Coefficient>& magnetic,
                                  const Coefficient& electric);

// l^2 inner product of finitely supported functions.
cd inner_product(const LatticeFunction& u, const LatticeFunction& v);

}  // namespace latspec

#endif  // LATSPEC_OPERATOR_HPP
