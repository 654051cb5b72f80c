#include "latspec/operator.hpp"

#include <cmath>

namespace latspec {

namespace {

// x |-> c(x + t), preserving as much category structure as possible.
Coefficient translate_coef(const Coefficient& c, const Point& t) {
  using Cat = Coefficient::Category;
  switch (c.category()) {
    case Cat::Constant:
      return c;
    case Cat::Periodic: {
      const auto& p = c.as_periodic();
      std::vector<cd> table(p.table.size());
      Point x(p.period.size());
      long idx = 0;
      std::function<void(Eigen::Index)> rec = [&](Eigen::Index j) {
        if (j == p.period.size()) {
          table[static_cast<std::size_t>(idx++)] = c(x + t);
          return;
        }
        for (int o = 0; o < p.period[j]; ++o) {
          x[j] = o;
          rec(j + 1);
        }
      };
      rec(0);
      return Coefficient::periodic(p.period, std::move(table));
    }
    case Cat::SlowlyOscillating: {
      const auto& s = c.as_so();
      return Coefficient::slowly_oscillating(
          [c, t](const Point& x) { return c(x + t); }, s.lo, s.hi,
          s.partial_limits);
    }
    case Cat::AxisProfile: {
      const auto& ap = c.as_axis_profile();
      return Coefficient::axis_profile(ap.axis, ap.tail_minus, ap.tail_plus,
                                       ap.h1 - t[ap.axis], ap.middle);
    }
    default:
      return Coefficient::sampled([c, t](const Point& x) { return c(x + t); });
  }
}

Coefficient conj_coef(const Coefficient& c) {
  using Cat = Coefficient::Category;
  switch (c.category()) {
    case Cat::Constant:
      return Coefficient::constant(std::conj(c.as_constant().value));
    case Cat::Periodic: {
      const auto& p = c.as_periodic();
      std::vector<cd> table(p.table.size());
      for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = std::conj(p.table[i]);
      return Coefficient::periodic(p.period, std::move(table));
    }
    case Cat::TwoValued:
    case Cat::AxisProfile:
      return c;  // real-valued by construction
    default:
      return Coefficient::sampled(
          [c](const Point& x) { return std::conj(c(x)); });
  }
}

Coefficient scale_coef(const Coefficient& c, cd s) {
  using Cat = Coefficient::Category;
  switch (c.category()) {
    case Cat::Constant:
      return Coefficient::constant(s * c.as_constant().value);
    case Cat::Periodic: {
      const auto& p = c.as_periodic();
      std::vector<cd> table(p.table.size());
      for (std::size_t i = 0; i < table.size(); ++i) table[i] = s * p.table[i];
      return Coefficient::periodic(p.period, std::move(table));
    }
    case Cat::SlowlyOscillating: {
      if (s.imag() == 0.0 && s.real() >= 0.0) {
        const auto& so = c.as_so();
        return Coefficient::slowly_oscillating(
            [c, s](const Point& x) { return s * c(x); }, s.real() * so.lo,
            s.real() * so.hi);
      }
      break;
    }
    case Cat::TwoValued: {
      if (s.imag() == 0.0) {
        const auto& tv = c.as_two_valued();
        return Coefficient::two_valued(s.real() * tv.a, s.real() * tv.b,
                                       tv.gamma_minus, tv.gamma_plus);
      }
      break;
    }
    case Cat::AxisProfile: {
      if (s.imag() == 0.0) {
        const auto& ap = c.as_axis_profile();
        std::vector<double> mid(ap.middle.size());
        for (std::size_t i = 0; i < mid.size(); ++i)
          mid[i] = s.real() * ap.middle[i];
        return Coefficient::axis_profile(ap.axis, s.real() * ap.tail_minus,
                                         s.real() * ap.tail_plus, ap.h1,
                                         std::move(mid));
      }
      break;
    }
    default:
      break;
  }
  return Coefficient::sampled([c, s](const Point& x) { return s * c(x); });
}

bool same_period(const Point& a, const Point& b) {
  return a.size() == b.size() && a == b;
}

Coefficient sum_coef(const Coefficient& a, const Coefficient& b);

// Real constant added into a structured coefficient keeps its structure.
Coefficient add_constant(const Coefficient& c, cd v) {
  using Cat = Coefficient::Category;
  if (v == cd(0.0, 0.0)) return c;
  switch (c.category()) {
    case Cat::Constant:
      return Coefficient::constant(c.as_constant().value + v);
    case Cat::Periodic: {
      const auto& p = c.as_periodic();
      std::vector<cd> table(p.table.size());
      for (std::size_t i = 0; i < table.size(); ++i) table[i] = p.table[i] + v;
      return Coefficient::periodic(p.period, std::move(table));
    }
    case Cat::SlowlyOscillating: {
      if (v.imag() == 0.0) {
        const auto& so = c.as_so();
        return Coefficient::slowly_oscillating(
            [c, v](const Point& x) { return c(x) + v; }, so.lo + v.real(),
            so.hi + v.real());
      }
      break;
    }
    case Cat::TwoValued: {
      if (v.imag() == 0.0) {
        const auto& tv = c.as_two_valued();
        return Coefficient::two_valued(tv.a + v.real(), tv.b + v.real(),
                                       tv.gamma_minus, tv.gamma_plus);
      }
      break;
    }
    case Cat::AxisProfile: {
      if (v.imag() == 0.0) {
        const auto& ap = c.as_axis_profile();
        std::vector<double> mid(ap.middle.size());
        for (std::size_t i = 0; i < mid.size(); ++i)
          mid[i] = ap.middle[i] + v.real();
        return Coefficient::axis_profile(ap.axis, ap.tail_minus + v.real(),
                                         ap.tail_plus + v.real(), ap.h1,
                                         std::move(mid));
      }
      break;
    }
    case Cat::SemiPeriodic: {
      const auto& sp = c.as_semi_periodic();
      if (!sp.product) {
        std::vector<cd> table(sp.periodic.table.size());
        for (std::size_t i = 0; i < table.size(); ++i)
          table[i] = sp.periodic.table[i] + v;
        return Coefficient::semi_periodic(sp.periodic.period, std::move(table),
                                          sp.so_eval, sp.so.lo, sp.so.hi,
                                          false);
      }
      break;
    }
    default:
      break;
  }
  return Coefficient::sampled([c, v](const Point& x) { return c(x) + v; });
}

Coefficient sum_coef(const Coefficient& a, const Coefficient& b) {
  using Cat = Coefficient::Category;
  if (a.category() == Cat::Constant) return add_constant(b, a.as_constant().value);
  if (b.category() == Cat::Constant) return add_constant(a, b.as_constant().value);
  if (a.category() == Cat::Periodic && b.category() == Cat::Periodic &&
      same_period(a.as_periodic().period, b.as_periodic().period)) {
    const auto& pa = a.as_periodic();
    const auto& pb = b.as_periodic();
    std::vector<cd> table(pa.table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
      table[i] = pa.table[i] + pb.table[i];
    return Coefficient::periodic(pa.period, std::move(table));
  }
  // Periodic + SO is the semi-periodic class.
  if (a.category() == Cat::Periodic && b.category() == Cat::SlowlyOscillating) {
    const auto& p = a.as_periodic();
    const auto& so = b.as_so();
    return Coefficient::semi_periodic(
        p.period, p.table, [b](const Point& x) { return b(x); }, so.lo, so.hi,
        false);
  }
  if (b.category() == Cat::Periodic && a.category() == Cat::SlowlyOscillating)
    return sum_coef(b, a);
  return Coefficient::sampled([a, b](const Point& x) { return a(x) + b(x); });
}

Coefficient product_coef(const Coefficient& a, const Coefficient& b) {
  using Cat = Coefficient::Category;
  if (a.category() == Cat::Constant)
    return scale_coef(b, a.as_constant().value);
  if (b.category() == Cat::Constant)
    return scale_coef(a, b.as_constant().value);
  if (a.category() == Cat::Periodic && b.category() == Cat::Periodic &&
      same_period(a.as_periodic().period, b.as_periodic().period)) {
    const auto& pa = a.as_periodic();
    const auto& pb = b.as_periodic();
    std::vector<cd> table(pa.table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
      table[i] = pa.table[i] * pb.table[i];
    return Coefficient::periodic(pa.period, std::move(table));
  }
  return Coefficient::sampled([a, b](const Point& x) { return a(x) * b(x); });
}

}  // namespace

LatticeOperator::LatticeOperator(int dim, TermMap terms) : dim_(dim) {
  for (auto& [shift, coef] : terms) {
    if (shift.size() != dim_)
      throw std::invalid_argument("LatticeOperator: shift dim mismatch");
    add_term(shift, coef);
  }
}

void LatticeOperator::add_term(const Point& shift, Coefficient coef) {
  if (shift.size() != dim_)
    throw std::invalid_argument("LatticeOperator: shift dim mismatch");
  auto it = terms_.find(shift);
  if (it == terms_.end())
    terms_.emplace(shift, std::move(coef));
  else
    it->second = sum_coef(it->second, coef);
}

int LatticeOperator::support_radius() const {
  int r = 0;
  for (const auto& [shift, coef] : terms_)
    for (Eigen::Index j = 0; j < shift.size(); ++j)
      r = std::max(r, std::abs(shift[j]));
  return r;
}

LatticeOperator identity(int dim) {
  LatticeOperator a(dim);
  a.add_term(Point::Zero(dim), Coefficient::constant(1.0));
  return a;
}

LatticeOperator shift_operator(const Point& g) {
  LatticeOperator a(static_cast<int>(g.size()));
  a.add_term(g, Coefficient::constant(1.0));
  return a;
}

LatticeOperator laplacian(int dim) {
  LatticeOperator a(dim);
  a.add_term(Point::Zero(dim), Coefficient::constant(2.0 * dim));
  for (int k = 0; k < dim; ++k) {
    Point e = Point::Zero(dim);
    e[k] = 1;
    a.add_term(e, Coefficient::constant(-1.0));
    a.add_term(-e, Coefficient::constant(-1.0));
  }
  return a;
}

LatticeFunction apply(const LatticeOperator& a, const LatticeFunction& u,
                      const Cube& window) {
  for (const auto& [s, v] : u)
    for (const auto& [shift, coef] : a.terms())
      if (!window.contains(s + shift))
        throw std::runtime_error("support escape");
  LatticeFunction out;
  for (const auto& [s, v] : u) {
    for (const auto& [shift, coef] : a.terms()) {
      Point x = s + shift;
      out[x] += coef(x) * v;
    }
  }
  return out;
}

LatticeOperator compose(const LatticeOperator& a, const LatticeOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("compose: dim mismatch");
  LatticeOperator out(a.dim());
  for (const auto& [alpha, ca] : a.terms()) {
    for (const auto& [beta, cb] : b.terms()) {
      // c_{alpha+beta}(x) = a_alpha(x) * b_beta(x - alpha)
      Coefficient shifted = translate_coef(cb, -alpha);
      out.add_term(alpha + beta, product_coef(ca, shifted));
    }
  }
  return out;
}

LatticeOperator adjoint(const LatticeOperator& a) {
  LatticeOperator out(a.dim());
  for (const auto& [alpha, c] : a.terms())
    out.add_term(-alpha, conj_coef(translate_coef(c, alpha)));
  return out;
}

LatticeOperator add(const LatticeOperator& a, const LatticeOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("add: dim mismatch");
  LatticeOperator out(a.dim());
  for (const auto& [shift, c] : a.terms()) out.add_term(shift, c);
  for (const auto& [shift, c] : b.terms()) out.add_term(shift, c);
  return out;
}

LatticeOperator scale(const LatticeOperator& a, cd c) {
  LatticeOperator out(a.dim());
  for (const auto& [shift, coef] : a.terms())
    out.add_term(shift, scale_coef(coef, c));
  return out;
}

int default_probe_radius(int dim) { return dim == 1 ? 1000 : 100; }

double wiener_norm(const LatticeOperator& a, int probe_radius) {
  if (probe_radius < 0) probe_radius = default_probe_radius(a.dim());
  double norm = 0;
  for (const auto& [shift, coef] : a.terms())
    norm += coef.sup_norm(probe_radius, a.dim());
  return norm;
}

LatticeOperator build_schrodinger(int dim, const Eigen::VectorXd& masses,
                                  const std::vector<Coefficient>& magnetic,
                                  const Coefficient& electric) {
  if (masses.size() != dim ||
      static_cast<int>(magnetic.size()) != dim)
    throw std::invalid_argument("build_schrodinger: size mismatch");
  for (int k = 0; k < dim; ++k)
    if (!(masses[k] > 0))
      throw std::invalid_argument("build_schrodinger: nonpositive mass");
  LatticeOperator h(dim);
  for (int k = 0; k < dim; ++k) {
    double w = 1.0 / (2.0 * masses[k]);
    Point e = Point::Zero(dim);
    e[k] = 1;
    const Coefficient& a = magnetic[k];
    // (V_e - aI)(V_{-e} - conj(a)I)
    //   = (1 + |a|^2) I - conj(a)(. - e) V_e - a V_{-e}
    if (a.is_constant()) {
      cd av = a.as_constant().value;
      h.add_term(Point::Zero(dim),
                 Coefficient::constant(w * (1.0 + std::norm(av))));
      h.add_term(e, Coefficient::constant(-w * std::conj(av)));
      h.add_term(-e, Coefficient::constant(-w * av));
    } else {
      h.add_term(Point::Zero(dim),
                 Coefficient::sampled([a, w](const Point& x) {
                   return w * (1.0 + std::norm(a(x)));
                 }));
      h.add_term(e, Coefficient::sampled([a, w, e](const Point& x) {
                   return -w * std::conj(a(x - e));
                 }));
      h.add_term(-e, Coefficient::sampled(
                         [a, w](const Point& x) { return -w * a(x); }));
    }
  }
  h.add_term(Point::Zero(dim), electric);
  return h;
}

cd inner_product(const LatticeFunction& u, const LatticeFunction& v) {
  cd s = 0;
  for (const auto& [x, val] : u) {
    auto it = v.find(x);
    if (it != v.end()) s += val * std::conj(it->second);
  }
  return s;
}

}  // namespace latspec
