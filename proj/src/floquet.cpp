#include "latspec/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace latspec {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// r x r matrix with ones on the superdiagonal and t^{-1} bottom-left.
Eigen::MatrixXcd lambda_hat(int r, cd t) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, r);
  for (int i = 0; i + 1 < r; ++i) m(i, i + 1) = 1.0;
  m(r - 1, 0) = 1.0 / t;
  return m;
}

// Explicit inverse: ones on the subdiagonal, t top-right.
Eigen::MatrixXcd lambda_hat_inv(int r, cd t) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, r);
  for (int i = 0; i + 1 < r; ++i) m(i + 1, i) = 1.0;
  m(0, r - 1) = t;
  return m;
}

Eigen::MatrixXcd lambda_hat_pow(int r, cd t, int exponent) {
  Eigen::MatrixXcd base =
      exponent >= 0 ? lambda_hat(r, t) : lambda_hat_inv(r, t);
  int n = std::abs(exponent);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(r, r);
  for (int i = 0; i < n; ++i) out = out * base;
  return out;
}

}  // namespace

PeriodSymbol::PeriodSymbol(
    Point period, std::vector<std::pair<Point, Eigen::VectorXcd>> terms)
    : period_(std::move(period)), terms_(std::move(terms)) {
  d_ = 1;
  for (Eigen::Index j = 0; j < period_.size(); ++j) d_ *= period_[j];
}

Eigen::MatrixXcd PeriodSymbol::operator()(const Eigen::VectorXd& theta) const {
  const int n = static_cast<int>(period_.size());
  Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(d_, d_);
  for (const auto& [alpha, mu] : terms_) {
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Identity(1, 1);
    for (int j = 0; j < n; ++j) {
      cd t = std::polar(1.0, theta[j]);
      k = kron(k, lambda_hat_pow(period_[j], t, -alpha[j]));
    }
    sigma += mu.asDiagonal() * k;
  }
  return sigma;
}

double PeriodSymbol::hermitian_defect(const TorusGrid& grid) const {
  double worst = 0;
  for (long i = 0; i < grid.total(); ++i) {
    Eigen::MatrixXcd s = (*this)(grid.theta(i));
    worst = std::max(worst, (s - s.adjoint().eval()).norm());
  }
  return worst;
}

PeriodSymbol build_symbol(const LatticeOperator& a, const Point& r) {
  if (r.size() != a.dim()) throw std::invalid_argument("period mismatch");
  long d = 1;
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    if (r[j] < 1) throw std::invalid_argument("period mismatch");
    d *= r[j];
  }
  std::vector<std::pair<Point, Eigen::VectorXcd>> terms;
  for (const auto& [alpha, coef] : a.terms()) {
    using Cat = Coefficient::Category;
    if (coef.category() == Cat::Periodic) {
      const auto& p = coef.as_periodic();
      for (Eigen::Index j = 0; j < r.size(); ++j)
        if (r[j] % p.period[j] != 0)
          throw std::runtime_error("period mismatch");
    } else if (coef.category() != Cat::Constant) {
      throw std::runtime_error("period mismatch");
    }
    // mu(a): diagonal of coefficient values at the cell offsets,
    // lexicographic with the first axis slowest.
    Eigen::VectorXcd mu(d);
    Point o = Point::Zero(a.dim());
    for (long idx = 0; idx < d; ++idx) {
      long rest = idx;
      for (int j = a.dim() - 1; j >= 0; --j) {
        o[j] = static_cast<int>(rest % r[j]);
        rest /= r[j];
      }
      mu[idx] = coef(o);
    }
    terms.emplace_back(alpha, std::move(mu));
  }
  return PeriodSymbol(r, std::move(terms));
}

BandSample band_sample(const PeriodSymbol& p, const TorusGrid& grid) {
  BandSample out{grid, Eigen::MatrixXd(grid.total(), p.d())};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
  for (long i = 0; i < grid.total(); ++i) {
    Eigen::MatrixXcd s = p(grid.theta(i));
    double defect = (s - s.adjoint().eval()).norm();
    if (defect > 1e-10 * (1.0 + s.norm()))
      throw std::runtime_error("operator not self-adjoint");
    solver.compute((s + s.adjoint().eval()) / 2.0,
                   Eigen::EigenvaluesOnly);
    out.values.row(i) = solver.eigenvalues().transpose();
  }
  return out;
}

TorusGrid default_band_grid(int dim) {
  return TorusGrid::uniform(dim, dim == 1 ? 2048 : (dim == 2 ? 96 : 24));
}

namespace {

double band_value(const PeriodSymbol& p, int k, const Eigen::VectorXd& theta) {
  Eigen::MatrixXcd s = p(theta);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      (s + s.adjoint().eval()) / 2.0, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()[k];
}

}  // namespace

SpectrumSet periodic_spectrum(const PeriodSymbol& p, const TorusGrid& grid,
                              double refine_tol) {
  BandSample bands = band_sample(p, grid);
  std::vector<double> step(static_cast<std::size_t>(grid.dim()));
  for (int j = 0; j < grid.dim(); ++j)
    step[static_cast<std::size_t>(j)] = grid.step(j);
  std::vector<Interval> intervals;
  for (int k = 0; k < p.d(); ++k) {
    long arg_lo = 0, arg_hi = 0;
    double lo = bands.values(0, k), hi = bands.values(0, k);
    for (long i = 1; i < grid.total(); ++i) {
      double v = bands.values(i, k);
      if (v < lo) {
        lo = v;
        arg_lo = i;
      }
      if (v > hi) {
        hi = v;
        arg_hi = i;
      }
    }
    lo = std::min(lo, refine_min(
                          [&](const Eigen::VectorXd& th) {
                            return band_value(p, k, th);
                          },
                          grid.theta(arg_lo), step, refine_tol));
    hi = std::max(hi, -refine_min(
                          [&](const Eigen::VectorXd& th) {
                            return -band_value(p, k, th);
                          },
                          grid.theta(arg_hi), step, refine_tol));
    intervals.emplace_back(lo, hi);
  }
  return normalize(std::move(intervals), kDefaultMergeTol);
}

InvertibilityResult invertibility_check(const PeriodSymbol& p,
                                        const TorusGrid& grid) {
  double min_det = std::numeric_limits<double>::infinity();
  double max_norm = 0;
  long argmin = 0;
  for (long i = 0; i < grid.total(); ++i) {
    Eigen::MatrixXcd s = p(grid.theta(i));
    max_norm = std::max(max_norm, s.operatorNorm());
    double det = std::abs(s.determinant());
    if (det < min_det) {
      min_det = det;
      argmin = i;
    }
  }
  double det_tol = 1e-12 * std::pow(std::max(max_norm, 1e-300),
                                    static_cast<double>(p.d()));
  std::vector<double> step(static_cast<std::size_t>(grid.dim()));
  for (int j = 0; j < grid.dim(); ++j)
    step[static_cast<std::size_t>(j)] = grid.step(j);
  Eigen::VectorXd witness = grid.theta(argmin);
  min_det = std::min(
      min_det, refine_min(
                   [&](const Eigen::VectorXd& th) {
                     return std::abs(p(th).determinant());
                   },
                   witness, step, 1e-10));
  return InvertibilityResult{min_det > det_tol, witness, min_det, det_tol};
}

double conjugation_check(const LatticeOperator& a, const Point& r,
                         int window_radius, unsigned seed, int trials) {
  const int n = a.dim();
  if (r.size() != n) throw std::invalid_argument("period mismatch");
  long d = 1;
  for (Eigen::Index j = 0; j < r.size(); ++j) d *= r[j];
  if (window_radius < a.support_radius() + 2)
    throw std::runtime_error("window too small");

  // Block operator sum_alpha mu(a_alpha) Lambda_1^{-alpha_1} x ... as a
  // finite series of (d x d matrix) * V_beta acting on C^d-valued sequences.
  using MatPoly = std::map<Point, Eigen::MatrixXcd, PointLess>;
  auto poly_mult = [n](const MatPoly& p, const MatPoly& q) {
    MatPoly out;
    for (const auto& [s, ms] : p)
      for (const auto& [t, mt] : q) {
        Point u = s + t;
        auto it = out.find(u);
        if (it == out.end())
          out.emplace(u, (ms * mt).eval());
        else
          it->second += ms * mt;
      }
    (void)n;
    return out;
  };

  // Per-axis Lambda_j (operator form of f2.6) embedded in the full lattice.
  auto lambda_axis_pow = [&](int axis, int exponent) {
    int rj = r[axis];
    Eigen::MatrixXcd s0 = Eigen::MatrixXcd::Zero(rj, rj);
    Eigen::MatrixXcd scorner = Eigen::MatrixXcd::Zero(rj, rj);
    MatPoly base;
    Point shift = Point::Zero(n);
    if (exponent >= 0) {
      for (int i = 0; i + 1 < rj; ++i) s0(i, i + 1) = 1.0;
      scorner(rj - 1, 0) = 1.0;
      shift[axis] = -1;  // V_j^{-1} in the corner
    } else {
      for (int i = 0; i + 1 < rj; ++i) s0(i + 1, i) = 1.0;
      scorner(0, rj - 1) = 1.0;
      shift[axis] = 1;
    }
    if (rj == 1) {
      // Degenerate cell: Lambda_j is the shift itself.
      base.clear();
      base.emplace(shift, Eigen::MatrixXcd::Identity(1, 1));
    } else {
      base.emplace(Point::Zero(n), s0);
      base.emplace(shift, scorner);
    }
    MatPoly out;
    out.emplace(Point::Zero(n), Eigen::MatrixXcd::Identity(rj, rj));
    for (int i = 0; i < std::abs(exponent); ++i) out = poly_mult(out, base);
    return out;
  };

  auto poly_kron = [&](const MatPoly& p, const MatPoly& q) {
    MatPoly out;
    for (const auto& [s, ms] : p)
      for (const auto& [t, mt] : q) {
        Point u = s + t;
        auto it = out.find(u);
        if (it == out.end())
          out.emplace(u, kron(ms, mt));
        else
          it->second += kron(ms, mt);
      }
    return out;
  };

  PeriodSymbol sym = build_symbol(a, r);  // validates the periods
  (void)sym;
  MatPoly block;
  for (const auto& [alpha, coef] : a.terms()) {
    MatPoly k;
    k.emplace(Point::Zero(n), Eigen::MatrixXcd::Identity(1, 1));
    for (int j = 0; j < n; ++j) k = poly_kron(k, lambda_axis_pow(j, -alpha[j]));
    // Left-multiply by mu(a_alpha).
    Eigen::VectorXcd mu(d);
    Point o = Point::Zero(n);
    for (long idx = 0; idx < d; ++idx) {
      long rest = idx;
      for (int j = n - 1; j >= 0; --j) {
        o[j] = static_cast<int>(rest % r[j]);
        rest /= r[j];
      }
      mu[idx] = coef(o);
    }
    for (auto& [s, m] : k) {
      Eigen::MatrixXcd contrib = mu.asDiagonal() * m;
      auto it = block.find(s);
      if (it == block.end())
        block.emplace(s, contrib);
      else
        it->second += contrib;
    }
  }

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = 0;
  for (int trial = 0; trial < trials; ++trial) {
    // Random scalar sequence supported on an x-cube.
    std::map<Point, cd, PointLess> u;
    for_each_in_cube(n, window_radius, [&](const Point& x) {
      u[x] = cd(unif(rng), unif(rng));
    });
    auto u_at = [&](const Point& x) -> cd {
      auto it = u.find(x);
      return it == u.end() ? cd(0.0) : it->second;
    };
    auto au_at = [&](const Point& x) {
      cd s = 0;
      for (const auto& [alpha, coef] : a.terms()) s += coef(x) * u_at(x - alpha);
      return s;
    };
    // Regrouping isometry: (T_r f)(y)_idx = f(r o y + offset(idx)).
    auto regroup = [&](const std::function<cd(const Point&)>& f,
                       const Point& y) {
      Eigen::VectorXcd v(d);
      Point x(n);
      for (long idx = 0; idx < d; ++idx) {
        long rest = idx;
        Point o = Point::Zero(n);
        for (int j = n - 1; j >= 0; --j) {
          o[j] = static_cast<int>(rest % r[j]);
          rest /= r[j];
        }
        for (int j = 0; j < n; ++j) x[j] = r[j] * y[j] + o[j];
        v[idx] = f(x);
      }
      return v;
    };
    int yrad = window_radius / *std::min_element(r.data(), r.data() + n) + 2;
    for_each_in_cube(n, yrad, [&](const Point& y) {
      Eigen::VectorXcd lhs = regroup(au_at, y);
      Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d);
      for (const auto& [beta, m] : block)
        rhs += m * regroup(u_at, y - beta);
      worst = std::max(worst, (lhs - rhs).lpNorm<Eigen::Infinity>());
    });
  }
  return worst;
}

}  // namespace latspec
