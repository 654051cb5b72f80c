#include "latspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace latspec {

namespace {

constexpr long kDenseEntryGuard = 10'000'000;

long cube_points(int dim, int L) {
  long n = 1;
  for (int j = 0; j < dim; ++j) n *= 2 * static_cast<long>(L) + 1;
  return n;
}

long flat_index(const Point& x, int L) {
  long idx = 0;
  for (Eigen::Index j = 0; j < x.size(); ++j)
    idx = idx * (2 * static_cast<long>(L) + 1) + (x[j] + L);
  return idx;
}

}  // namespace

double TruncatedMatrix::norm_estimate() const {
  // Max absolute column sum; equals the max row sum for Hermitian input.
  double s = 0;
  if (real) {
    for (int k = 0; k < re.outerSize(); ++k) {
      double col = 0;
      for (Eigen::SparseMatrix<double>::InnerIterator it(re, k); it; ++it)
        col += std::abs(it.value());
      s = std::max(s, col);
    }
  } else {
    for (int k = 0; k < cx.outerSize(); ++k) {
      double col = 0;
      for (Eigen::SparseMatrix<cd>::InnerIterator it(cx, k); it; ++it)
        col += std::abs(it.value());
      s = std::max(s, col);
    }
  }
  return s;
}

Eigen::VectorXcd TruncatedMatrix::multiply(const Eigen::VectorXcd& v) const {
  if (real) return (re * v.real()).cast<cd>() + cd(0, 1) * (re * v.imag()).cast<cd>();
  return cx * v;
}

TruncatedMatrix truncate(const LatticeOperator& a, const TruncationConfig& cfg) {
  if (cfg.L < 1) throw std::invalid_argument("truncate: L < 1");
  const int dim = a.dim();
  const int L = cfg.L;
  const long n = cube_points(dim, L);

  bool all_real = true;
  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(static_cast<std::size_t>(n) * a.terms().size());
  for_each_in_cube(dim, L, [&](const Point& x) {
    long row = flat_index(x, L);
    for (const auto& [alpha, coef] : a.terms()) {
      Point y = x - alpha;
      bool inside = true;
      for (int j = 0; j < dim; ++j)
        if (std::abs(y[j]) > L) {
          inside = false;
          break;
        }
      if (!inside) continue;
      cd v = coef(x);
      if (v == cd(0.0)) continue;
      if (v.imag() != 0.0) all_real = false;
      trips.emplace_back(static_cast<int>(row), static_cast<int>(flat_index(y, L)), v);
    }
  });

  TruncatedMatrix m;
  m.n = n;
  m.real = all_real;
  if (all_real) {
    std::vector<Eigen::Triplet<double>> rt;
    rt.reserve(trips.size());
    for (const auto& t : trips) rt.emplace_back(t.row(), t.col(), t.value().real());
    m.re.resize(n, n);
    m.re.setFromTriplets(rt.begin(), rt.end());
    Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(m.re.transpose()) - m.re;
    double scale = 0;
    for (int k = 0; k < m.re.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(m.re, k); it; ++it)
        scale = std::max(scale, std::abs(it.value()));
    double defect = 0;
    for (int k = 0; k < diff.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it)
        defect = std::max(defect, std::abs(it.value()));
    m.hermitian = defect <= 1e-14 * std::max(scale, 1.0);
  } else {
    m.cx.resize(n, n);
    m.cx.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseMatrix<cd> diff =
        Eigen::SparseMatrix<cd>(m.cx.adjoint()) - m.cx;
    double scale = 0;
    for (int k = 0; k < m.cx.outerSize(); ++k)
      for (Eigen::SparseMatrix<cd>::InnerIterator it(m.cx, k); it; ++it)
        scale = std::max(scale, std::abs(it.value()));
    double defect = 0;
    for (int k = 0; k < diff.outerSize(); ++k)
      for (Eigen::SparseMatrix<cd>::InnerIterator it(diff, k); it; ++it)
        defect = std::max(defect, std::abs(it.value()));
    m.hermitian = defect <= 1e-14 * std::max(scale, 1.0);
  }
  return m;
}

std::vector<double> tridiagonal_eigenvalues(const Eigen::VectorXd& diag,
                                            const Eigen::VectorXd& offdiag,
                                            double tol) {
  const long n = diag.size();
  if (offdiag.size() != n - 1)
    throw std::invalid_argument("tridiagonal: offdiag size");
  Eigen::VectorXd e2 = offdiag.array().square();

  // Number of eigenvalues strictly below x (Sturm sequence count).
  auto count_below = [&](double x) {
    long cnt = 0;
    double d = diag[0] - x;
    for (long i = 0;;) {
      if (d == 0.0) d = -1e-300;  // zero pivot counts as negative
      if (d < 0) ++cnt;
      if (++i >= n) break;
      d = diag[i] - x - e2[i - 1] / d;
    }
    return cnt;
  };

  double lo = diag[0], hi = diag[0];
  for (long i = 0; i < n; ++i) {
    double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
               (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  lo -= tol;
  hi += tol;

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  struct Seg {
    double a, b;
    long ca, cb;
  };
  std::vector<Seg> stack{{lo, hi, 0, n}};
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.cb == s.ca) continue;
    if (s.b - s.a <= tol) {
      double mid = 0.5 * (s.a + s.b);
      for (long i = 0; i < s.cb - s.ca; ++i) out.push_back(mid);
      continue;
    }
    double mid = 0.5 * (s.a + s.b);
    long cm = count_below(mid);
    stack.push_back({s.a, mid, s.ca, cm});
    stack.push_back({mid, s.b, cm, s.cb});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Lanczos tridiagonalization; returns Ritz values of the Krylov section.
// Full reorthogonalization for moderate sizes, plain recurrence for very
// large ones (extremal Ritz values stay accurate either way).
template <typename Vec, typename MatVec>
std::vector<double> lanczos_ritz(long n, const MatVec& mv, int iters,
                                 unsigned seed, bool reorth, double tol) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vec v(n);
  for (long i = 0; i < n; ++i) v[i] = unif(rng);
  v /= v.norm();
  Vec v_prev = Vec::Zero(n);
  std::vector<Vec> basis;
  if (reorth) basis.push_back(v);
  std::vector<double> alpha, beta;
  double last_min = 0, last_max = 0;
  for (int j = 0; j < iters; ++j) {
    Vec w = mv(v);
    double a = std::real(v.dot(w));
    alpha.push_back(a);
    w -= a * v;
    if (j > 0) w -= beta.back() * v_prev;
    if (reorth)
      for (const Vec& q : basis) w -= q.dot(w) * q;
    double b = w.norm();
    if (b < 1e-14) break;
    beta.push_back(b);
    v_prev = v;
    v = w / b;
    if (reorth) basis.push_back(v);

    if ((j + 1) % 10 == 0 || j + 1 == iters) {
      long m = static_cast<long>(alpha.size());
      Eigen::VectorXd d(m), e(std::max<long>(m - 1, 0));
      for (long i = 0; i < m; ++i) d[i] = alpha[static_cast<std::size_t>(i)];
      for (long i = 0; i + 1 < m; ++i) e[i] = beta[static_cast<std::size_t>(i)];
      std::vector<double> ritz = tridiagonal_eigenvalues(d, e, 1e-12);
      if (j > 20 && std::abs(ritz.front() - last_min) < tol &&
          std::abs(ritz.back() - last_max) < tol)
        return ritz;
      last_min = ritz.front();
      last_max = ritz.back();
    }
  }
  long m = static_cast<long>(alpha.size());
  Eigen::VectorXd d(m), e(std::max<long>(m - 1, 0));
  for (long i = 0; i < m; ++i) d[i] = alpha[static_cast<std::size_t>(i)];
  for (long i = 0; i + 1 < m; ++i) e[i] = beta[static_cast<std::size_t>(i)];
  return tridiagonal_eigenvalues(d, e, 1e-12);
}

}  // namespace

std::vector<double> lanczos_extremal(const TruncatedMatrix& m, int k,
                                     unsigned seed, int max_iter, double tol) {
  int iters = static_cast<int>(std::min<long>(max_iter, m.n));
  bool reorth = m.n <= 200'000;
  std::vector<double> ritz;
  if (m.real) {
    auto mv = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
      return m.re * v;
    };
    ritz = lanczos_ritz<Eigen::VectorXd>(m.n, mv, iters, seed, reorth, tol);
  } else {
    auto mv = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
      return m.cx * v;
    };
    ritz = lanczos_ritz<Eigen::VectorXcd>(m.n, mv, iters, seed, reorth, tol);
  }
  std::vector<double> out;
  long total = static_cast<long>(ritz.size());
  long keep = std::min<long>(k, total);
  for (long i = 0; i < keep; ++i) out.push_back(ritz[static_cast<std::size_t>(i)]);
  for (long i = std::max<long>(keep, total - keep); i < total; ++i)
    out.push_back(ritz[static_cast<std::size_t>(i)]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Real symmetric tridiagonal extraction for 1-D nearest-neighbor operators.
bool extract_tridiagonal(const TruncatedMatrix& m, Eigen::VectorXd& d,
                         Eigen::VectorXd& e) {
  if (!m.real) return false;
  d = Eigen::VectorXd::Zero(m.n);
  e = Eigen::VectorXd::Zero(std::max<long>(m.n - 1, 0));
  for (int k = 0; k < m.re.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m.re, k); it; ++it) {
      long i = it.row(), j = it.col();
      if (i == j)
        d[i] = it.value();
      else if (i == j + 1)
        e[j] = it.value();
      else if (j == i + 1) {
        // upper entry; symmetry already verified via hermitian flag
      } else {
        return false;
      }
    }
  return true;
}

}  // namespace

std::vector<double> eigenvalues(const TruncatedMatrix& m,
                                const TruncationConfig& cfg) {
  if (!m.hermitian) throw std::runtime_error("non-Hermitian truncation");
  if (cfg.mode == TruncationConfig::Mode::Extremal)
    return lanczos_extremal(m, cfg.extremal_count, cfg.seed);

  Eigen::VectorXd d, e;
  if (extract_tridiagonal(m, d, e))
    return tridiagonal_eigenvalues(d, e, std::min(cfg.residual_tol, 1e-10));

  if (m.n * m.n > kDenseEntryGuard)
    throw std::runtime_error(
        "cube size overflow guard: matrix too large for dense mode, use "
        "extremal mode");
  std::vector<double> out(static_cast<std::size_t>(m.n));
  if (m.real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        Eigen::MatrixXd(m.re), Eigen::EigenvaluesOnly);
    for (long i = 0; i < m.n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        Eigen::MatrixXcd(m.cx), Eigen::EigenvaluesOnly);
    for (long i = 0; i < m.n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
  }
  return out;
}

namespace {

double nearest_distance(const std::vector<double>& sorted, double x) {
  if (sorted.empty()) return std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = std::min(best, std::abs(*it - x));
  if (it != sorted.begin()) best = std::min(best, std::abs(*(it - 1) - x));
  return best;
}

std::vector<double> outlier_values(const SpectrumSet& predicted,
                                   const std::vector<double>& eigs,
                                   double delta) {
  std::vector<double> out;
  for (double v : eigs)
    if (point_distance(predicted, v) > delta) out.push_back(v);
  return out;
}

}  // namespace

CoverageReport coverage(const SpectrumSet& predicted, const LatticeOperator& a,
                        const OracleConfig& cfg) {
  if (predicted.empty()) throw std::runtime_error("empty spectrum");
  if (cfg.Ls.empty()) throw std::invalid_argument("coverage: no L values");
  std::vector<int> Ls = cfg.Ls;
  std::sort(Ls.begin(), Ls.end());

  std::vector<std::vector<double>> eigs_per_L;
  for (int L : Ls) {
    TruncatedMatrix m = truncate(a, cfg.at(L));
    eigs_per_L.push_back(eigenvalues(m, cfg.at(L)));
  }
  const std::vector<double>& eigs = eigs_per_L.back();

  CoverageReport report;
  report.predicted = predicted;
  report.eigenvalues = eigs;
  report.delta = cfg.delta;

  // Probe points: uniform samples of the predicted set, spacing <= delta/2.
  long total = 0, matched = 0;
  for (const Interval& c : predicted.components()) {
    long npts = std::max<long>(
        2, static_cast<long>(std::ceil(c.length() / (cfg.delta / 2))) + 1);
    if (c.length() == 0.0) npts = 1;
    for (long i = 0; i < npts; ++i) {
      double x = npts == 1 ? c.lo : c.lo + c.length() * i / (npts - 1);
      ++total;
      if (nearest_distance(eigs, x) <= cfg.delta) ++matched;
    }
  }
  report.coverage_fraction =
      total > 0 ? static_cast<double>(matched) / total : 1.0;

  // Outliers at the largest size, clustered, then matched across sizes.
  std::vector<double> big = outlier_values(predicted, eigs, cfg.delta);
  std::vector<std::vector<double>> per_L_outliers;
  for (const auto& e : eigs_per_L)
    per_L_outliers.push_back(outlier_values(predicted, e, cfg.delta));

  std::vector<std::pair<double, double>> clusters;  // (rep, width)
  for (std::size_t i = 0; i < big.size();) {
    std::size_t j = i;
    while (j + 1 < big.size() && big[j + 1] - big[j] <= 10 * cfg.delta) ++j;
    clusters.emplace_back(big[(i + j) / 2], big[j] - big[i]);
    i = j + 1;
  }
  for (const auto& [rep, width] : clusters) {
    double lo = rep, hi = rep;
    bool matched_all = true;
    for (const auto& outs : per_L_outliers) {
      double dmin = std::numeric_limits<double>::infinity();
      double vmin = rep;
      for (double v : outs)
        if (std::abs(v - rep) < dmin) {
          dmin = std::abs(v - rep);
          vmin = v;
        }
      if (dmin > 10 * cfg.delta) {
        matched_all = false;
        break;
      }
      lo = std::min(lo, vmin);
      hi = std::max(hi, vmin);
    }
    double spread = hi - lo;
    bool stable = matched_all && Ls.size() >= 3 && spread < 10 * cfg.delta;
    report.outliers.push_back(Outlier{rep, spread, stable});
  }
  return report;
}

std::vector<Outlier> discrete_eigs(const LatticeOperator& a,
                                   const SpectrumSet& ess,
                                   const OracleConfig& cfg) {
  CoverageReport report = coverage(ess, a, cfg);
  std::vector<Outlier> out;
  for (const Outlier& o : report.outliers)
    if (o.stable) out.push_back(o);
  std::sort(out.begin(), out.end(),
            [](const Outlier& x, const Outlier& y) { return x.value < y.value; });
  return out;
}

}  // namespace latspec
