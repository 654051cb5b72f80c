#include "latspec/core.hpp"

#include <algorithm>
#include <cmath>

namespace latspec {

SpectrumSet::SpectrumSet(std::vector<Interval> components, double merge_tol)
    : merge_tol_(merge_tol) {
  *this = normalize(std::move(components), merge_tol);
}

double SpectrumSet::min() const {
  if (components_.empty()) throw std::runtime_error("empty spectrum");
  return components_.front().lo;
}

double SpectrumSet::max() const {
  if (components_.empty()) throw std::runtime_error("empty spectrum");
  return components_.back().hi;
}

SpectrumSet normalize(std::vector<Interval> intervals, double merge_tol) {
  if (merge_tol < 0) throw std::invalid_argument("normalize: merge_tol < 0");
  SpectrumSet out;
  out.merge_tol_ = merge_tol;
  if (intervals.empty()) return out;
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });
  std::vector<Interval> merged;
  merged.push_back(intervals.front());
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    Interval& last = merged.back();
    if (intervals[i].lo - last.hi <= merge_tol)
      last.hi = std::max(last.hi, intervals[i].hi);
    else
      merged.push_back(intervals[i]);
  }
  out.components_ = std::move(merged);
  return out;
}

SpectrumSet minkowski_sum(const SpectrumSet& s, const Interval& j) {
  std::vector<Interval> out;
  out.reserve(s.components().size());
  for (const Interval& c : s.components())
    out.emplace_back(c.lo + j.lo, c.hi + j.hi);
  return normalize(std::move(out), s.merge_tol());
}

SpectrumSet set_union(const SpectrumSet& a, const SpectrumSet& b) {
  std::vector<Interval> all(a.components());
  all.insert(all.end(), b.components().begin(), b.components().end());
  return normalize(std::move(all), std::max(a.merge_tol(), b.merge_tol()));
}

double point_distance(const SpectrumSet& s, double x) {
  if (s.empty()) throw std::runtime_error("empty spectrum");
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& c : s.components()) {
    if (c.contains(x)) return 0.0;
    best = std::min(best, std::min(std::abs(x - c.lo), std::abs(x - c.hi)));
  }
  return best;
}

namespace {

// sup over x in `from` of dist(x, to). Candidates: endpoints of `from`
// and midpoints of gaps of `to` clipped into `from`.
double directed_hausdorff(const SpectrumSet& from, const SpectrumSet& to) {
  double best = 0.0;
  auto consider = [&](double x) {
    if (point_distance(from, x) == 0.0)
      best = std::max(best, point_distance(to, x));
  };
  for (const Interval& c : from.components()) {
    consider(c.lo);
    consider(c.hi);
  }
  const auto& tc = to.components();
  for (std::size_t i = 0; i + 1 < tc.size(); ++i)
    consider(0.5 * (tc[i].hi + tc[i + 1].lo));
  return best;
}

}  // namespace

double hausdorff_distance(const SpectrumSet& s1, const SpectrumSet& s2) {
  if (s1.empty() || s2.empty()) throw std::runtime_error("empty spectrum");
  return std::max(directed_hausdorff(s1, s2), directed_hausdorff(s2, s1));
}

bool contains(const SpectrumSet& s, double x, double tol) {
  if (tol < 0) throw std::invalid_argument("contains: tol < 0");
  return point_distance(s, x) <= tol;
}

bool subset_of(const SpectrumSet& inner, const SpectrumSet& outer, double tol) {
  for (const Interval& c : inner.components()) {
    // Endpoints plus the gap midpoints of outer restricted to c.
    if (point_distance(outer, c.lo) > tol) return false;
    if (point_distance(outer, c.hi) > tol) return false;
    const auto& oc = outer.components();
    for (std::size_t i = 0; i + 1 < oc.size(); ++i) {
      double mid = 0.5 * (oc[i].hi + oc[i + 1].lo);
      if (c.contains(mid) && point_distance(outer, mid) > tol) return false;
    }
  }
  return true;
}

TorusGrid::TorusGrid(int dim, std::vector<int> resolution)
    : dim_(dim), resolution_(std::move(resolution)) {
  if (dim_ < 1) throw std::invalid_argument("TorusGrid: dim < 1");
  if (static_cast<int>(resolution_.size()) != dim_)
    throw std::invalid_argument("TorusGrid: resolution size mismatch");
  total_ = 1;
  for (int n : resolution_) {
    if (n < 2) throw std::invalid_argument("TorusGrid: resolution < 2");
    total_ *= n;
  }
}

Eigen::VectorXd TorusGrid::theta(long flat) const {
  Eigen::VectorXd out(dim_);
  for (int j = dim_ - 1; j >= 0; --j) {
    int n = resolution_[static_cast<std::size_t>(j)];
    out[j] = 2.0 * M_PI * static_cast<double>(flat % n) / n;
    flat /= n;
  }
  return out;
}

double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

double refine_min(const std::function<double(const Eigen::VectorXd&)>& f,
                  Eigen::VectorXd theta0, const std::vector<double>& step,
                  double tol, int sweeps) {
  double best = f(theta0);
  for (int s = 0; s < sweeps; ++s) {
    for (int j = 0; j < theta0.size(); ++j) {
      double h = step[static_cast<std::size_t>(j)];
      double t0 = theta0[j];
      double arg = t0;
      auto line = [&](double t) {
        Eigen::VectorXd th = theta0;
        th[j] = t;
        return f(th);
      };
      // Track argmin along the line, not just the value.
      const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
      double a = t0 - h, b = t0 + h;
      double c = b - invphi * (b - a), d = a + invphi * (b - a);
      double fc = line(c), fd = line(d);
      while (b - a > tol) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - invphi * (b - a);
          fc = line(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + invphi * (b - a);
          fd = line(d);
        }
      }
      arg = fc < fd ? c : d;
      double val = std::min(fc, fd);
      if (val < best) {
        best = val;
        theta0[j] = arg;
      }
    }
  }
  return best;
}

}  // namespace latspec
