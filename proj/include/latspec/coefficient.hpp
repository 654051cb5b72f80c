#ifndef LATSPEC_COEFFICIENT_HPP
#define LATSPEC_COEFFICIENT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latspec/core.hpp"

namespace latspec {

// A bounded coefficient function Z^N -> C together with semantic knowledge
// of its behavior at infinity. The category tag drives limit-operator
// enumeration; numerical routines only use the evaluator.

struct ConstantData {
  cd value;
};

// r-periodic table in lexicographic order over offsets (first axis slowest),
// entry index = ((o_1 * r_2 + o_2) * r_3 + ...) for offsets o_j in [0, r_j).
struct PeriodicData {
  Point period;
  std::vector<cd> table;
};

// Slowly oscillating with declared partial-limit envelope [lo, hi]
// (or a declared finite partial-limit set).
struct SlowlyOscillatingData {
  double lo;
  double hi;
  std::optional<std::vector<double>> partial_limits;
};

// One-dimensional two-valued potential: value a on
// Lambda = union_k { x : gm(k) <= |x| <= gp(k) }, value b elsewhere.
struct TwoValuedData {
  double a;
  double b;
  std::function<std::int64_t(std::int64_t)> gamma_minus;
  std::function<std::int64_t(std::int64_t)> gamma_plus;
};

// Depends on one coordinate only: constant tails outside a bounded middle
// zone, explicit values inside. middle[i] is the value at x_axis = h1 + i.
struct AxisProfileData {
  int axis;
  double tail_minus;
  double tail_plus;
  std::int64_t h1;
  std::vector<double> middle;
};

// Sum or product of an r-periodic table and a slowly oscillating factor
// (the semi-periodic class SP_r).
struct SemiPeriodicData {
  PeriodicData periodic;
  SlowlyOscillatingData so;
  std::function<cd(const Point&)> so_eval;
  bool product;  // false: periodic + so, true: periodic * so
};

// No structural knowledge; sup norm estimated on a probe window.
struct SampledData {
  std::optional<double> sup_bound;
};

class Coefficient {
 public:
  enum class Category {
    Constant,
    Periodic,
    SlowlyOscillating,
    TwoValued,
    AxisProfile,
    SemiPeriodic,
    Sampled,
  };

  static Coefficient constant(cd value);
  static Coefficient periodic(Point period, std::vector<cd> table);
  static Coefficient slowly_oscillating(
      std::function<cd(const Point&)> eval, double env_lo, double env_hi,
      std::optional<std::vector<double>> partial_limits = std::nullopt);
  static Coefficient two_valued(double a, double b,
                                std::function<std::int64_t(std::int64_t)> gm,
                                std::function<std::int64_t(std::int64_t)> gp);
  // Quadratic gamma sequences gm(k) = p2*k^2 + p1*k + p0.
  static Coefficient two_valued_quadratic(double a, double b,
                                          std::array<std::int64_t, 3> gm,
                                          std::array<std::int64_t, 3> gp);
  static Coefficient axis_profile(int axis, double tail_minus,
                                  double tail_plus, std::int64_t h1,
                                  std::vector<double> middle);
  static Coefficient semi_periodic(Point period, std::vector<cd> table,
                                   std::function<cd(const Point&)> so_eval,
                                   double so_lo, double so_hi, bool product);
  static Coefficient sampled(std::function<cd(const Point&)> eval,
                             std::optional<double> sup_bound = std::nullopt);

  cd operator()(const Point& x) const { return eval_(x); }
  Category category() const { return cat_; }

  // Exact sup for analytic categories, probe-window sup otherwise.
  double sup_norm(int probe_radius, int dim) const;

  const ConstantData& as_constant() const;
  const PeriodicData& as_periodic() const;
  const SlowlyOscillatingData& as_so() const;
  const TwoValuedData& as_two_valued() const;
  const AxisProfileData& as_axis_profile() const;
  const SemiPeriodicData& as_semi_periodic() const;

  bool is_constant() const { return cat_ == Category::Constant; }

  static std::string category_name(Category c);

 private:
  Coefficient() = default;
  std::function<cd(const Point&)> eval_;
  Category cat_ = Category::Sampled;
  std::variant<ConstantData, PeriodicData, SlowlyOscillatingData,
               TwoValuedData, AxisProfileData, SemiPeriodicData, SampledData>
      data_;
};

// Offset of x inside the periodic cell, lexicographic flat index.
long periodic_index(const Point& x, const Point& period);

// Direct membership test x in Lambda for a two-valued coefficient.
bool two_valued_in_lambda(const TwoValuedData& tv, std::int64_t x);

// Iterate a centered cube window [-R, R]^dim, calling f on each point.
void for_each_in_cube(int dim, int radius,
                      const std::function<void(const Point&)>& f);

}  // namespace latspec

#endif  // LATSPEC_COEFFICIENT_HPP
