#ifndef LATSPEC_CORE_HPP
#define LATSPEC_CORE_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace latspec {

using cd = std::complex<double>;
using Point = Eigen::VectorXi;

// Lexicographic order on lattice points, used as map key comparator.
struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

// Closed real interval [lo, hi] of energies.
struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
  }
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Finite union of disjoint closed intervals, sorted ascending.
// Spectra of the self-adjoint operators handled here all have this form.
class SpectrumSet {
 public:
  SpectrumSet() : merge_tol_(1e-9) {}
  SpectrumSet(std::vector<Interval> components, double merge_tol);

  const std::vector<Interval>& components() const { return components_; }
  double merge_tol() const { return merge_tol_; }
  bool empty() const { return components_.empty(); }
  std::size_t size() const { return components_.size(); }

  double min() const;
  double max() const;

 private:
  std::vector<Interval> components_;
  double merge_tol_;
  friend SpectrumSet normalize(std::vector<Interval>, double);
};

constexpr double kDefaultMergeTol = 1e-9;

// Sorted disjoint union of the inputs; intervals with gap <= merge_tol
// are merged into one component.
SpectrumSet normalize(std::vector<Interval> intervals,
                      double merge_tol = kDefaultMergeTol);

// { s + j : s in S, j in J }, renormalized.
SpectrumSet minkowski_sum(const SpectrumSet& s, const Interval& j);

// Union of two normalized sets.
SpectrumSet set_union(const SpectrumSet& a, const SpectrumSet& b);

// Distance from a point to the set (0 if inside).
double point_distance(const SpectrumSet& s, double x);

// Hausdorff distance between two nonempty normalized sets; exact for
// interval unions (extrema occur at endpoints and gap midpoints).
double hausdorff_distance(const SpectrumSet& s1, const SpectrumSet& s2);

bool contains(const SpectrumSet& s, double x, double tol);

// True iff every point of `inner` lies in `outer` (to tol).
bool subset_of(const SpectrumSet& inner, const SpectrumSet& outer,
               double tol = 0.0);

// Uniform grid on [0, 2pi)^N with theta_j = 2*pi*k/n_j, k = 0..n_j-1.
class TorusGrid {
 public:
  TorusGrid(int dim, std::vector<int> resolution);
  static TorusGrid uniform(int dim, int n) {
    return TorusGrid(dim, std::vector<int>(static_cast<std::size_t>(dim), n));
  }

  int dim() const { return dim_; }
  const std::vector<int>& resolution() const { return resolution_; }
  long total() const { return total_; }

  // theta of the flat index (last axis fastest).
  Eigen::VectorXd theta(long flat) const;
  double step(int axis) const { return 2.0 * M_PI / resolution_[static_cast<std::size_t>(axis)]; }

 private:
  int dim_;
  std::vector<int> resolution_;
  long total_;
};

// Complex samples of a symbol over a torus grid.
struct PointCloud {
  std::vector<cd> samples;
  TorusGrid grid;
};

// Golden-section minimizer on [a, b] for a unimodal-near-minimum f.
double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-10);

// Refine a minimum of f over [0,2pi)^N found at grid point theta0 by
// coordinate-wise golden-section within +-step around the current best.
double refine_min(const std::function<double(const Eigen::VectorXd&)>& f,
                  Eigen::VectorXd theta0, const std::vector<double>& step,
                  double tol = 1e-10, int sweeps = 6);

}  // namespace latspec

#endif  // LATSPEC_CORE_HPP
