#include "latspec/symbol.hpp"

#include <cmath>

namespace latspec {

ConstantOperatorView constant_view(const LatticeOperator& a) {
  ConstantOperatorView view{a.dim(), {}};
  for (const auto& [shift, coef] : a.terms()) {
    if (!coef.is_constant())
      throw std::runtime_error("not translation invariant");
    view.terms[shift] = coef.as_constant().value;
  }
  return view;
}

cd symbol_eval(const ConstantOperatorView& a, const Eigen::VectorXd& theta) {
  cd s = 0;
  for (const auto& [alpha, c] : a.terms) {
    double phase = 0;
    for (Eigen::Index j = 0; j < alpha.size(); ++j) phase -= alpha[j] * theta[j];
    s += c * std::polar(1.0, phase);
  }
  return s;
}

TorusGrid default_symbol_grid(int dim) {
  return TorusGrid::uniform(dim, dim <= 2 ? 2048 : 128);
}

namespace {

// Match c*I + sum_k w_k (2I - V_{e_k} - V_{-e_k}), w_k >= 0, c real.
// Returns [c, c + 4 sum w_k] on success.
std::optional<Interval> laplacian_template(const ConstantOperatorView& a) {
  std::vector<double> wplus(static_cast<std::size_t>(a.dim), 0.0);
  std::vector<double> wminus(static_cast<std::size_t>(a.dim), 0.0);
  cd diag = 0;
  for (const auto& [alpha, c] : a.terms) {
    int nz = 0, axis = -1;
    for (Eigen::Index j = 0; j < alpha.size(); ++j)
      if (alpha[j] != 0) {
        ++nz;
        axis = static_cast<int>(j);
      }
    if (nz == 0) {
      diag = c;
    } else if (nz == 1 && std::abs(alpha[axis]) == 1) {
      if (c.imag() != 0.0 || c.real() > 0.0) return std::nullopt;
      (alpha[axis] > 0 ? wplus : wminus)[static_cast<std::size_t>(axis)] =
          -c.real();
    } else {
      return std::nullopt;
    }
  }
  if (diag.imag() != 0.0) return std::nullopt;
  double wsum = 0;
  for (std::size_t k = 0; k < wplus.size(); ++k) {
    if (wplus[k] != wminus[k]) return std::nullopt;
    wsum += wplus[k];
  }
  double c0 = diag.real() - 2.0 * wsum;
  return Interval(c0, c0 + 4.0 * wsum);
}

}  // namespace

SpectrumSet spectrum_constant(const ConstantOperatorView& a,
                              const TorusGrid& grid, double refine_tol) {
  if (auto closed = laplacian_template(a))
    return normalize({*closed}, 0.0);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  Eigen::VectorXd arg_lo, arg_hi;
  for (long i = 0; i < grid.total(); ++i) {
    Eigen::VectorXd th = grid.theta(i);
    cd v = symbol_eval(a, th);
    if (std::abs(v.imag()) > 1e-10) throw std::runtime_error("use range_cloud");
    if (v.real() < lo) {
      lo = v.real();
      arg_lo = th;
    }
    if (v.real() > hi) {
      hi = v.real();
      arg_hi = th;
    }
  }
  std::vector<double> step(static_cast<std::size_t>(grid.dim()));
  for (int j = 0; j < grid.dim(); ++j) step[static_cast<std::size_t>(j)] = grid.step(j);
  auto freal = [&](const Eigen::VectorXd& th) {
    return symbol_eval(a, th).real();
  };
  lo = std::min(lo, refine_min(freal, arg_lo, step, refine_tol));
  auto fneg = [&](const Eigen::VectorXd& th) {
    return -symbol_eval(a, th).real();
  };
  hi = std::max(hi, -refine_min(fneg, arg_hi, step, refine_tol));
  return normalize({Interval(lo, hi)}, 0.0);
}

PointCloud range_cloud(const ConstantOperatorView& a, const TorusGrid& grid) {
  PointCloud cloud{{}, grid};
  cloud.samples.reserve(static_cast<std::size_t>(grid.total()));
  for (long i = 0; i < grid.total(); ++i)
    cloud.samples.push_back(symbol_eval(a, grid.theta(i)));
  return cloud;
}

}  // namespace latspec
