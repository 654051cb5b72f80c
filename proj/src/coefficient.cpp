#include "latspec/coefficient.hpp"

#include <array>
#include <cmath>

namespace latspec {

long periodic_index(const Point& x, const Point& period) {
  long idx = 0;
  for (Eigen::Index j = 0; j < period.size(); ++j) {
    int r = period[j];
    int o = ((x[j] % r) + r) % r;
    idx = idx * r + o;
  }
  return idx;
}

bool two_valued_in_lambda(const TwoValuedData& tv, std::int64_t x) {
  std::int64_t ax = std::llabs(x);
  for (std::int64_t k = 0;; ++k) {
    std::int64_t gm = tv.gamma_minus(k);
    std::int64_t gp = tv.gamma_plus(k);
    if (gm <= ax && ax <= gp) return true;
    if (gm > ax && gp > ax) return false;
  }
}

void for_each_in_cube(int dim, int radius,
                      const std::function<void(const Point&)>& f) {
  Point x = Point::Constant(dim, -radius);
  while (true) {
    f(x);
    int j = dim - 1;
    while (j >= 0) {
      if (++x[j] <= radius) break;
      x[j] = -radius;
      --j;
    }
    if (j < 0) break;
  }
}

Coefficient Coefficient::constant(cd value) {
  Coefficient c;
  c.cat_ = Category::Constant;
  c.data_ = ConstantData{value};
  c.eval_ = [value](const Point&) { return value; };
  return c;
}

Coefficient Coefficient::periodic(Point period, std::vector<cd> table) {
  long d = 1;
  for (Eigen::Index j = 0; j < period.size(); ++j) {
    if (period[j] < 1) throw std::invalid_argument("periodic: period < 1");
    d *= period[j];
  }
  if (static_cast<long>(table.size()) != d)
    throw std::invalid_argument("periodic: table size != prod(period)");
  Coefficient c;
  c.cat_ = Category::Periodic;
  PeriodicData data{std::move(period), std::move(table)};
  c.eval_ = [data](const Point& x) {
    return data.table[static_cast<std::size_t>(periodic_index(x, data.period))];
  };
  c.data_ = std::move(data);
  return c;
}

Coefficient Coefficient::slowly_oscillating(
    std::function<cd(const Point&)> eval, double env_lo, double env_hi,
    std::optional<std::vector<double>> partial_limits) {
  if (env_lo > env_hi)
    throw std::invalid_argument("slowly_oscillating: envelope lo > hi");
  Coefficient c;
  c.cat_ = Category::SlowlyOscillating;
  c.data_ = SlowlyOscillatingData{env_lo, env_hi, std::move(partial_limits)};
  c.eval_ = std::move(eval);
  return c;
}

Coefficient Coefficient::two_valued(
    double a, double b, std::function<std::int64_t(std::int64_t)> gm,
    std::function<std::int64_t(std::int64_t)> gp) {
  // Finite-range validation of the divergence conditions: the gamma
  // sequences must interlace strictly and both the block widths and the
  // gap widths must grow beyond any fixed bound on the probed range.
  std::int64_t max_width = 0, max_gap = 0;
  for (std::int64_t k = 0; k < 200; ++k) {
    std::int64_t gmk = gm(k), gpk = gp(k), gm1 = gm(k + 1);
    if (!(gmk <= gpk && gpk < gm1))
      throw std::invalid_argument(
          "two_valued: gamma sequences must satisfy gm(k) <= gp(k) < gm(k+1)");
    max_width = std::max(max_width, gpk - gmk);
    max_gap = std::max(max_gap, gm1 - gpk);
  }
  if (max_width < 16 || max_gap < 16)
    throw std::invalid_argument(
        "two_valued: block/gap widths do not diverge on the probed range");
  Coefficient c;
  c.cat_ = Category::TwoValued;
  TwoValuedData data{a, b, std::move(gm), std::move(gp)};
  c.eval_ = [data](const Point& x) {
    if (x.size() != 1)
      throw std::invalid_argument("two_valued coefficient is one-dimensional");
    return cd(two_valued_in_lambda(data, x[0]) ? data.a : data.b, 0.0);
  };
  c.data_ = std::move(data);
  return c;
}

Coefficient Coefficient::two_valued_quadratic(double a, double b,
                                              std::array<std::int64_t, 3> gm,
                                              std::array<std::int64_t, 3> gp) {
  auto poly = [](std::array<std::int64_t, 3> p) {
    return [p](std::int64_t k) { return p[2] * k * k + p[1] * k + p[0]; };
  };
  return two_valued(a, b, poly(gm), poly(gp));
}

Coefficient Coefficient::axis_profile(int axis, double tail_minus,
                                      double tail_plus, std::int64_t h1,
                                      std::vector<double> middle) {
  Coefficient c;
  c.cat_ = Category::AxisProfile;
  AxisProfileData data{axis, tail_minus, tail_plus, h1, std::move(middle)};
  c.eval_ = [data](const Point& x) {
    std::int64_t t = x[data.axis];
    if (t < data.h1) return cd(data.tail_minus, 0.0);
    std::int64_t i = t - data.h1;
    if (i < static_cast<std::int64_t>(data.middle.size()))
      return cd(data.middle[static_cast<std::size_t>(i)], 0.0);
    return cd(data.tail_plus, 0.0);
  };
  c.data_ = std::move(data);
  return c;
}

Coefficient Coefficient::semi_periodic(Point period, std::vector<cd> table,
                                       std::function<cd(const Point&)> so_eval,
                                       double so_lo, double so_hi,
                                       bool product) {
  Coefficient per = periodic(period, table);
  Coefficient c;
  c.cat_ = Category::SemiPeriodic;
  SemiPeriodicData data{per.as_periodic(),
                        SlowlyOscillatingData{so_lo, so_hi, std::nullopt},
                        so_eval, product};
  if (product)
    c.eval_ = [per, so_eval](const Point& x) { return per(x) * so_eval(x); };
  else
    c.eval_ = [per, so_eval](const Point& x) { return per(x) + so_eval(x); };
  c.data_ = std::move(data);
  return c;
}

Coefficient Coefficient::sampled(std::function<cd(const Point&)> eval,
                                 std::optional<double> sup_bound) {
  Coefficient c;
  c.cat_ = Category::Sampled;
  c.data_ = SampledData{sup_bound};
  c.eval_ = std::move(eval);
  return c;
}

double Coefficient::sup_norm(int probe_radius, int dim) const {
  switch (cat_) {
    case Category::Constant:
      return std::abs(as_constant().value);
    case Category::Periodic: {
      double m = 0;
      for (cd v : as_periodic().table) m = std::max(m, std::abs(v));
      return m;
    }
    case Category::TwoValued: {
      const auto& tv = as_two_valued();
      return std::max(std::abs(tv.a), std::abs(tv.b));
    }
    case Category::AxisProfile: {
      const auto& ap = as_axis_profile();
      double m = std::max(std::abs(ap.tail_minus), std::abs(ap.tail_plus));
      for (double v : ap.middle) m = std::max(m, std::abs(v));
      return m;
    }
    default: {
      if (cat_ == Category::Sampled) {
        const auto& sd = std::get<SampledData>(data_);
        if (sd.sup_bound) return *sd.sup_bound;
      }
      double m = 0;
      if (dim == 1) {
        Point x(1);
        for (int t = -probe_radius; t <= probe_radius; ++t) {
          x[0] = t;
          m = std::max(m, std::abs(eval_(x)));
        }
      } else {
        for_each_in_cube(dim, probe_radius, [&](const Point& x) {
          m = std::max(m, std::abs(eval_(x)));
        });
      }
      return m;
    }
  }
}

const ConstantData& Coefficient::as_constant() const {
  return std::get<ConstantData>(data_);
}
const PeriodicData& Coefficient::as_periodic() const {
  if (cat_ == Category::SemiPeriodic)
    return std::get<SemiPeriodicData>(data_).periodic;
  return std::get<PeriodicData>(data_);
}
const SlowlyOscillatingData& Coefficient::as_so() const {
  if (cat_ == Category::SemiPeriodic)
    return std::get<SemiPeriodicData>(data_).so;
  return std::get<SlowlyOscillatingData>(data_);
}
const TwoValuedData& Coefficient::as_two_valued() const {
  return std::get<TwoValuedData>(data_);
}
const AxisProfileData& Coefficient::as_axis_profile() const {
  return std::get<AxisProfileData>(data_);
}
const SemiPeriodicData& Coefficient::as_semi_periodic() const {
  return std::get<SemiPeriodicData>(data_);
}

std::string Coefficient::category_name(Category c) {
  switch (c) {
    case Category::Constant:
      return "constant";
    case Category::Periodic:
      return "periodic";
    case Category::SlowlyOscillating:
      return "slowly_oscillating";
    case Category::TwoValued:
      return "two_valued";
    case Category::AxisProfile:
      return "axis_profile";
    case Category::SemiPeriodic:
      return "semi_periodic";
    case Category::Sampled:
      return "sampled";
  }
  return "unknown";
}

}  // namespace latspec
