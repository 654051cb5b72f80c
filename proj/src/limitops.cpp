#include "latspec/limitops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "latspec/floquet.hpp"
#include "latspec/symbol.hpp"

namespace latspec {

PartialLimitReport partial_limit_along(const Coefficient& c,
                                       const std::function<Point(int)>& g,
                                       int window_radius, int j_max,
                                       double tol) {
  if (j_max < 4) throw std::invalid_argument("partial_limit_along: j_max < 4");
  auto norm_inf = [](const Point& p) {
    int m = 0;
    for (Eigen::Index j = 0; j < p.size(); ++j) m = std::max(m, std::abs(p[j]));
    return m;
  };
  int prev = norm_inf(g(0));
  for (int j = 1; j <= j_max; ++j) {
    int cur = norm_inf(g(j));
    if (cur < prev) throw std::runtime_error("sequence bounded");
    prev = cur;
  }
  if (norm_inf(g(j_max)) <= norm_inf(g(j_max / 2)))
    throw std::runtime_error("sequence bounded");

  const int dim = static_cast<int>(g(0).size());
  PartialLimitReport report;
  report.window_radius = window_radius;
  report.j_max = j_max;
  double worst = 0;
  LatticeFunction table;
  for_each_in_cube(dim, window_radius, [&](const Point& x) {
    double re_lo = std::numeric_limits<double>::infinity(), re_hi = -re_lo;
    double im_lo = re_lo, im_hi = -re_lo;
    cd last = 0;
    for (int j = j_max / 2; j <= j_max; ++j) {
      last = c(x + g(j));
      re_lo = std::min(re_lo, last.real());
      re_hi = std::max(re_hi, last.real());
      im_lo = std::min(im_lo, last.imag());
      im_hi = std::max(im_hi, last.imag());
    }
    worst = std::max(worst, std::hypot(re_hi - re_lo, im_hi - im_lo));
    table[x] = last;
  });
  report.max_oscillation = worst;
  report.converged = worst <= tol;
  if (report.converged) report.limit_table = std::move(table);
  return report;
}

namespace {

using Variant = std::pair<Coefficient, std::string>;

std::vector<Variant> coefficient_variants(const Coefficient& c, int dim,
                                          bool& envelope_connected) {
  using Cat = Coefficient::Category;
  switch (c.category()) {
    case Cat::Constant:
    case Cat::Periodic:
      return {{c, ""}};
    case Cat::SlowlyOscillating: {
      const auto& so = c.as_so();
      envelope_connected = true;
      if (so.partial_limits) {
        std::vector<Variant> out;
        for (double v : *so.partial_limits)
          out.push_back({Coefficient::constant(v), "SO partial limit"});
        return out;
      }
      return {{Coefficient::constant(so.lo), "SO partial limit at envelope endpoint m"},
              {Coefficient::constant(so.hi), "SO partial limit at envelope endpoint M"}};
    }
    case Cat::SemiPeriodic: {
      const auto& sp = c.as_semi_periodic();
      envelope_connected = true;
      auto with_limit = [&](double v, const std::string& lbl) {
        std::vector<cd> table(sp.periodic.table.size());
        for (std::size_t i = 0; i < table.size(); ++i)
          table[i] = sp.product ? sp.periodic.table[i] * v
                                : sp.periodic.table[i] + v;
        return Variant{Coefficient::periodic(sp.periodic.period, table), lbl};
      };
      return {with_limit(sp.so.lo, "semi-periodic, SO partial limit m"),
              with_limit(sp.so.hi, "semi-periodic, SO partial limit M")};
    }
    case Cat::TwoValued: {
      if (dim != 1)
        throw std::runtime_error("not classifiable");
      const auto& tv = c.as_two_valued();
      // Edge shifts h normalized to 0: the translates are unitarily
      // equivalent and have the same spectrum.
      return {
          {Coefficient::constant(tv.a), "interior of \xce\x9b"},
          {Coefficient::constant(tv.b), "gap of \xce\x9b"},
          {Coefficient::axis_profile(0, tv.b, tv.a, 0, {}), "left edge h=0"},
          {Coefficient::axis_profile(0, tv.a, tv.b, 0, {}), "right edge h=0"}};
    }
    case Cat::AxisProfile: {
      const auto& ap = c.as_axis_profile();
      return {{Coefficient::constant(ap.tail_minus), "g_N -> -inf"},
              {Coefficient::constant(ap.tail_plus), "g_N -> +inf"},
              {c, "transversal, g_N const"}};
    }
    default:
      throw std::runtime_error("not classifiable");
  }
}

}  // namespace

LimitOperatorFamily enumerate_limit_ops(const LatticeOperator& h) {
  using Cat = Coefficient::Category;
  // The hard categories respond to the generating sequence itself; only one
  // such coefficient is supported, with everything else untouched by
  // translation at infinity (constants) or enumerated independently.
  int hard = 0;
  for (const auto& [shift, coef] : h.terms())
    if (coef.category() == Cat::TwoValued ||
        coef.category() == Cat::AxisProfile)
      ++hard;
  if (hard > 1) throw std::runtime_error("not classifiable");
  if (hard == 1)
    for (const auto& [shift, coef] : h.terms())
      if (coef.category() != Cat::Constant &&
          coef.category() != Cat::TwoValued &&
          coef.category() != Cat::AxisProfile)
        throw std::runtime_error("not classifiable");

  LimitOperatorFamily family;
  std::vector<Point> shifts;
  std::vector<std::vector<Variant>> slots;
  for (const auto& [shift, coef] : h.terms()) {
    shifts.push_back(shift);
    slots.push_back(
        coefficient_variants(coef, h.dim(), family.envelope_connected));
  }

  long combos = 1;
  for (const auto& s : slots) combos *= static_cast<long>(s.size());
  if (combos > 256) throw std::runtime_error("not classifiable");

  for (long idx = 0; idx < combos; ++idx) {
    long rest = idx;
    LatticeOperator member(h.dim());
    std::string label;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const Variant& v = slots[i][static_cast<std::size_t>(rest % slots[i].size())];
      rest /= static_cast<long>(slots[i].size());
      member.add_term(shifts[i], v.first);
      if (!v.second.empty()) {
        if (!label.empty()) label += "; ";
        label += v.second;
      }
    }
    if (label.empty()) label = "translation invariant at infinity";
    family.members.push_back({std::move(member), std::move(label)});
  }
  if (family.envelope_connected)
    family.notes.push_back(
        "partial-limit set of each slowly oscillating factor is a connected "
        "interval; endpoint members shown, spectra swept between them");
  return family;
}

SpectrumSet ess_spectrum_so(double m_phi, double M_phi, int dim) {
  if (m_phi > M_phi) throw std::invalid_argument("ess_spectrum_so: m > M");
  return normalize({Interval(m_phi, M_phi + 4.0 * dim)}, 0.0);
}

SpectrumSet ess_spectrum_two_valued(double a, double b) {
  return normalize({Interval(a, a + 4.0), Interval(b, b + 4.0)}, 0.0);
}

SpectrumSet ess_spectrum_two_valued_so(double m_a, double M_a, double m_b,
                                       double M_b) {
  if (m_a > M_a || m_b > M_b)
    throw std::invalid_argument("ess_spectrum_two_valued_so: envelope violation");
  return normalize({Interval(m_a, M_a + 4.0), Interval(m_b, M_b + 4.0)}, 0.0);
}

SpectrumSet ess_spectrum_semiperiodic(const SpectrumSet& bands, double m_psi,
                                      double M_psi) {
  if (bands.empty()) throw std::runtime_error("empty spectrum");
  if (m_psi > M_psi)
    throw std::invalid_argument("ess_spectrum_semiperiodic: m > M");
  return minkowski_sum(bands, Interval(m_psi, M_psi));
}

SpectrumSet ess_spectrum_waveguide(int dim, const Interval& env_plus,
                                   const Interval& env_minus,
                                   const std::vector<Coefficient>& profiles,
                                   const OracleConfig& oracle_cfg) {
  std::vector<Interval> parts;
  parts.emplace_back(env_minus.lo, env_minus.hi + 4.0 * dim);
  parts.emplace_back(env_plus.lo, env_plus.hi + 4.0 * dim);
  for (const Coefficient& profile : profiles) {
    if (profile.category() != Coefficient::Category::AxisProfile)
      throw std::runtime_error("profile without constant tails");
    const auto& ap = profile.as_axis_profile();
    LatticeOperator line = laplacian(1);
    line.add_term(Point::Zero(1),
                  Coefficient::axis_profile(0, ap.tail_minus, ap.tail_plus,
                                            ap.h1, ap.middle));
    SpectrumSet sigma = normalize({Interval(ap.tail_plus, ap.tail_plus + 4.0),
                                   Interval(ap.tail_minus, ap.tail_minus + 4.0)},
                                  0.0);
    for (const Outlier& o : discrete_eigs(line, sigma, oracle_cfg))
      parts.emplace_back(o.value, o.value + 4.0 * (dim - 1));
  }
  return normalize(std::move(parts), kDefaultMergeTol);
}

namespace {

using Cat = Coefficient::Category;

// Componentwise lcm of all periods present (1 for constants).
Point common_period(const LatticeOperator& h) {
  Point r = Point::Ones(h.dim());
  auto lcm = [](int a, int b) { return a / std::gcd(a, b) * b; };
  for (const auto& [shift, coef] : h.terms()) {
    if (coef.category() == Cat::Periodic ||
        coef.category() == Cat::SemiPeriodic) {
      const Point& p = coef.category() == Cat::Periodic
                           ? coef.as_periodic().period
                           : coef.as_semi_periodic().periodic.period;
      for (int j = 0; j < h.dim(); ++j) r[j] = lcm(r[j], p[j]);
    }
  }
  return r;
}

// True if the non-diagonal part of h is exactly the off-diagonal part of
// the discrete Laplacian (coefficient -1 at every +-e_k, nothing else).
bool is_laplacian_offdiagonal(const LatticeOperator& h) {
  int found = 0;
  for (const auto& [shift, coef] : h.terms()) {
    bool zero = shift.isZero();
    if (zero) continue;
    int nz = 0, axis = -1;
    for (Eigen::Index j = 0; j < shift.size(); ++j)
      if (shift[j] != 0) {
        ++nz;
        axis = static_cast<int>(j);
      }
    if (nz != 1 || std::abs(shift[axis]) != 1) return false;
    if (!coef.is_constant() || coef.as_constant().value != cd(-1.0)) return false;
    ++found;
  }
  return found == 2 * h.dim();
}

}  // namespace

SpectrumSet ess_spectrum_general(const LatticeOperator& h,
                                 const TorusGrid& grid,
                                 const OracleConfig& oracle_cfg) {
  // Classify by the categories present.
  bool only_constant = true, only_const_periodic = true;
  const Coefficient* diag = nullptr;
  Point zero = Point::Zero(h.dim());
  for (const auto& [shift, coef] : h.terms()) {
    if (shift.isZero()) diag = &coef;
    if (coef.category() != Cat::Constant) only_constant = false;
    if (coef.category() != Cat::Constant && coef.category() != Cat::Periodic)
      only_const_periodic = false;
  }

  if (only_constant)
    return spectrum_constant(constant_view(h), grid);

  if (only_const_periodic) {
    Point r = common_period(h);
    return periodic_spectrum(build_symbol(h, r),
                             default_band_grid(h.dim()));
  }

  // A slowly oscillating (or semi-periodic) diagonal on top of a
  // constant/periodic frame: spectra sweep a connected envelope, so the
  // union is the base spectrum widened by the envelope interval.
  if (diag != nullptr && (diag->category() == Cat::SlowlyOscillating ||
                          diag->category() == Cat::SemiPeriodic)) {
    bool frame_ok = true;
    for (const auto& [shift, coef] : h.terms())
      if (!shift.isZero() && coef.category() != Cat::Constant &&
          coef.category() != Cat::Periodic)
        frame_ok = false;
    if (frame_ok) {
      LatticeOperator base(h.dim());
      for (const auto& [shift, coef] : h.terms())
        if (!shift.isZero()) base.add_term(shift, coef);
      const SlowlyOscillatingData& so = diag->as_so();
      if (diag->category() == Cat::SemiPeriodic) {
        const auto& sp = diag->as_semi_periodic();
        if (sp.product) throw std::runtime_error("not classifiable");
        base.add_term(zero,
                      Coefficient::periodic(sp.periodic.period, sp.periodic.table));
      }
      SpectrumSet base_sp = ess_spectrum_general(base, grid, oracle_cfg);
      return ess_spectrum_semiperiodic(base_sp, so.lo, so.hi);
    }
  }

  // Two-valued diagonal on the 1-D Laplacian frame: union of the two
  // shifted free spectra.
  if (diag != nullptr && diag->category() == Cat::TwoValued && h.dim() == 1 &&
      is_laplacian_offdiagonal(h)) {
    const auto& tv = diag->as_two_valued();
    // Diagonal merged with the Laplacian's 2: subtract it back out.
    return ess_spectrum_two_valued(tv.a - 2.0, tv.b - 2.0);
  }

  // Waveguide: axis profile diagonal on the N-D Laplacian frame.
  if (diag != nullptr && diag->category() == Cat::AxisProfile &&
      is_laplacian_offdiagonal(h)) {
    const auto& ap = diag->as_axis_profile();
    double shift0 = 2.0 * h.dim();
    std::vector<double> mid(ap.middle.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = ap.middle[i] - shift0;
    Coefficient profile = Coefficient::axis_profile(
        0, ap.tail_minus - shift0, ap.tail_plus - shift0, ap.h1, std::move(mid));
    const auto& p = profile.as_axis_profile();
    return ess_spectrum_waveguide(
        h.dim(), Interval(p.tail_plus, p.tail_plus),
        Interval(p.tail_minus, p.tail_minus), {profile}, oracle_cfg);
  }

  throw std::runtime_error("not classifiable");
}

}  // namespace latspec
