#pragma once

// Double-double arithmetic: an unevaluated sum hi + lo of two doubles with
// |lo| <= ulp(hi)/2, giving roughly 32 significant decimal digits. Used for
// integral assembly and for the overlap-matrix orthogonalization, where the
// Hylleraas basis at high omega loses more digits than double precision has.
//
// Error-free transformations follow the usual two-sum / fma two-product
// construction. Must not be compiled with -ffast-math.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>

#include <Eigen/Core>

namespace hent {

class DoubleDouble {
 public:
  constexpr DoubleDouble() noexcept : hi_(0.0), lo_(0.0) {}
  constexpr DoubleDouble(double x) noexcept : hi_(x), lo_(0.0) {}  // NOLINT
  constexpr DoubleDouble(int x) noexcept : hi_(x), lo_(0.0) {}     // NOLINT
  constexpr DoubleDouble(long x) noexcept                          // NOLINT
      : hi_(static_cast<double>(x)),
        lo_(static_cast<double>(x - static_cast<long>(static_cast<double>(x)))) {}
  constexpr DoubleDouble(double hi, double lo) noexcept : hi_(hi), lo_(lo) {}

  constexpr double hi() const noexcept { return hi_; }
  constexpr double lo() const noexcept { return lo_; }

  explicit constexpr operator double() const noexcept { return hi_ + lo_; }
  explicit operator long double() const noexcept {
    return static_cast<long double>(hi_) + lo_;
  }

  static DoubleDouble fast_two_sum(double a, double b) noexcept {
    const double s = a + b;
    return {s, b - (s - a)};
  }
  static DoubleDouble two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double ap = s - b;
    const double bp = s - ap;
    return {s, (a - ap) + (b - bp)};
  }
  static DoubleDouble two_prod(double a, double b) noexcept {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  friend constexpr DoubleDouble operator-(DoubleDouble x) noexcept { return {-x.hi_, -x.lo_}; }

  friend DoubleDouble operator+(DoubleDouble x, DoubleDouble y) noexcept {
    const DoubleDouble s = two_sum(x.hi_, y.hi_);
    const DoubleDouble t = two_sum(x.lo_, y.lo_);
    const DoubleDouble v = fast_two_sum(s.hi_, s.lo_ + t.hi_);
    return fast_two_sum(v.hi_, t.lo_ + v.lo_);
  }
  friend DoubleDouble operator+(DoubleDouble x, double y) noexcept {
    const DoubleDouble s = two_sum(x.hi_, y);
    return fast_two_sum(s.hi_, x.lo_ + s.lo_);
  }
  friend DoubleDouble operator+(double x, DoubleDouble y) noexcept { return y + x; }
  friend DoubleDouble operator-(DoubleDouble x, DoubleDouble y) noexcept { return x + (-y); }
  friend DoubleDouble operator-(DoubleDouble x, double y) noexcept { return x + (-y); }
  friend DoubleDouble operator-(double x, DoubleDouble y) noexcept { return (-y) + x; }

  friend DoubleDouble operator*(DoubleDouble x, DoubleDouble y) noexcept {
    const DoubleDouble c = two_prod(x.hi_, y.hi_);
    const double t = std::fma(x.lo_, y.hi_, std::fma(x.hi_, y.lo_, x.lo_ * y.lo_));
    return fast_two_sum(c.hi_, c.lo_ + t);
  }
  friend DoubleDouble operator*(DoubleDouble x, double y) noexcept {
    const DoubleDouble c = two_prod(x.hi_, y);
    return fast_two_sum(c.hi_, std::fma(x.lo_, y, c.lo_));
  }
  friend DoubleDouble operator*(double x, DoubleDouble y) noexcept { return y * x; }

  friend DoubleDouble operator/(DoubleDouble x, DoubleDouble y) noexcept {
    // One Newton correction on the double quotient.
    const double q1 = x.hi_ / y.hi_;
    const DoubleDouble r = x - y * q1;
    const double q2 = r.hi_ / y.hi_;
    const DoubleDouble r2 = r - y * q2;
    const double q3 = r2.hi_ / y.hi_;
    return fast_two_sum(q1, q2) + q3;
  }
  friend DoubleDouble operator/(DoubleDouble x, double y) noexcept {
    const double q1 = x.hi_ / y;
    const DoubleDouble p = two_prod(q1, y);
    const double q2 = ((x.hi_ - p.hi_) - p.lo_ + x.lo_) / y;
    return fast_two_sum(q1, q2);
  }
  friend DoubleDouble operator/(double x, DoubleDouble y) noexcept {
    return DoubleDouble(x) / y;
  }

  DoubleDouble& operator+=(DoubleDouble y) noexcept { return *this = *this + y; }
  DoubleDouble& operator-=(DoubleDouble y) noexcept { return *this = *this - y; }
  DoubleDouble& operator*=(DoubleDouble y) noexcept { return *this = *this * y; }
  DoubleDouble& operator/=(DoubleDouble y) noexcept { return *this = *this / y; }
  DoubleDouble& operator+=(double y) noexcept { return *this = *this + y; }
  DoubleDouble& operator-=(double y) noexcept { return *this = *this - y; }
  DoubleDouble& operator*=(double y) noexcept { return *this = *this * y; }
  DoubleDouble& operator/=(double y) noexcept { return *this = *this / y; }

  friend bool operator==(DoubleDouble x, DoubleDouble y) noexcept {
    return x.hi_ == y.hi_ && x.lo_ == y.lo_;
  }
  friend bool operator!=(DoubleDouble x, DoubleDouble y) noexcept { return !(x == y); }
  friend bool operator<(DoubleDouble x, DoubleDouble y) noexcept {
    return x.hi_ < y.hi_ || (x.hi_ == y.hi_ && x.lo_ < y.lo_);
  }
  friend bool operator>(DoubleDouble x, DoubleDouble y) noexcept { return y < x; }
  friend bool operator<=(DoubleDouble x, DoubleDouble y) noexcept { return !(y < x); }
  friend bool operator>=(DoubleDouble x, DoubleDouble y) noexcept { return !(x < y); }

 private:
  double hi_;
  double lo_;
};

// Math functions found by argument-dependent lookup (Eigen calls them
// unqualified after `using std::sqrt;` and friends).

inline DoubleDouble abs(DoubleDouble x) noexcept { return x.hi() < 0.0 ? -x : x; }
inline DoubleDouble fabs(DoubleDouble x) noexcept { return abs(x); }

inline DoubleDouble sqrt(DoubleDouble x) noexcept {
  if (x.hi() <= 0.0) return DoubleDouble(std::sqrt(x.hi()));
  const double s = std::sqrt(x.hi());
  const DoubleDouble r = x - DoubleDouble::two_prod(s, s);
  return DoubleDouble::fast_two_sum(s, r.hi() / (2.0 * s));
}

inline DoubleDouble ldexp(DoubleDouble x, int e) noexcept {
  return {std::ldexp(x.hi(), e), std::ldexp(x.lo(), e)};
}

inline DoubleDouble floor(DoubleDouble x) noexcept {
  const double h = std::floor(x.hi());
  if (h != x.hi()) return DoubleDouble(h);
  return DoubleDouble::fast_two_sum(h, std::floor(x.lo()));
}

inline DoubleDouble hypot(DoubleDouble x, DoubleDouble y) noexcept {
  x = abs(x);
  y = abs(y);
  if (x < y) std::swap(x, y);
  if (x.hi() == 0.0) return x;
  const DoubleDouble t = y / x;
  return x * sqrt(1.0 + t * t);
}

// Series exponential with argument reduction by powers of two.
inline DoubleDouble exp(DoubleDouble x) noexcept {
  if (x.hi() > 709.0) return DoubleDouble(std::numeric_limits<double>::infinity());
  if (x.hi() < -745.0) return DoubleDouble(0.0);
  constexpr DoubleDouble kLn2(6.931471805599452862e-01, 2.319046813846299558e-17);
  const double k = std::round(x.hi() / kLn2.hi());
  DoubleDouble r = x - kLn2 * k;
  constexpr int kSquarings = 10;
  r = ldexp(r, -kSquarings);
  DoubleDouble term = r;
  DoubleDouble sum = r;
  for (int n = 2; n < 30; ++n) {
    term = term * r / static_cast<double>(n);
    sum += term;
    if (std::fabs(term.hi()) < 1e-36) break;
  }
  // expm1 doubling: (1+s)^2 - 1 = s(2+s)
  for (int i = 0; i < kSquarings; ++i) sum = sum * (sum + 2.0);
  return ldexp(sum + 1.0, static_cast<int>(k));
}

inline DoubleDouble log(DoubleDouble x) noexcept {
  if (x.hi() <= 0.0) return DoubleDouble(std::log(x.hi()));
  // Newton on exp(y) = x.
  DoubleDouble y(std::log(x.hi()));
  y = y + x * exp(-y) - 1.0;
  return y;
}

inline DoubleDouble pow(DoubleDouble x, int n) noexcept {
  DoubleDouble result(1.0);
  DoubleDouble base = n < 0 ? DoubleDouble(1.0) / x : x;
  unsigned e = n < 0 ? static_cast<unsigned>(-n) : static_cast<unsigned>(n);
  while (e != 0U) {
    if ((e & 1U) != 0U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

inline bool isfinite(DoubleDouble x) noexcept { return std::isfinite(x.hi()); }
inline bool isinf(DoubleDouble x) noexcept { return std::isinf(x.hi()); }
inline bool isnan(DoubleDouble x) noexcept { return std::isnan(x.hi()); }

inline double to_double(DoubleDouble x) noexcept { return static_cast<double>(x); }
inline double to_double(double x) noexcept { return x; }

/// Decimal rendering with about 32 significant digits.
std::string to_string(DoubleDouble x);
std::ostream& operator<<(std::ostream& os, DoubleDouble x);

}  // namespace hent

namespace std {
template <>
class numeric_limits<hent::DoubleDouble> : public numeric_limits<double> {
 public:
  static constexpr int digits = 104;
  static constexpr int digits10 = 31;
  static constexpr hent::DoubleDouble epsilon() noexcept {
    return hent::DoubleDouble(4.93038065763132e-32);
  }
  static constexpr hent::DoubleDouble min() noexcept {
    return hent::DoubleDouble(2.0041683600089728e-292);
  }
  static constexpr hent::DoubleDouble max() noexcept {
    return hent::DoubleDouble(1.79769313486231570815e+308, 9.97920154767359795037e+291);
  }
  static constexpr hent::DoubleDouble lowest() noexcept { return -max(); }
  static constexpr hent::DoubleDouble infinity() noexcept {
    return hent::DoubleDouble(numeric_limits<double>::infinity());
  }
  static constexpr hent::DoubleDouble quiet_NaN() noexcept {
    return hent::DoubleDouble(numeric_limits<double>::quiet_NaN());
  }
};
}  // namespace std

namespace Eigen {
template <>
struct NumTraits<hent::DoubleDouble> : GenericNumTraits<hent::DoubleDouble> {
  using Real = hent::DoubleDouble;
  using NonInteger = hent::DoubleDouble;
  using Literal = hent::DoubleDouble;
  using Nested = hent::DoubleDouble;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 12
  };
  static inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static inline Real dummy_precision() { return Real(1e-28); }
  static inline Real highest() { return std::numeric_limits<Real>::max(); }
  static inline Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static inline Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static inline Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static inline int digits10() { return 31; }
  static inline int digits() { return 104; }
};

namespace internal {
template <>
struct cast_impl<hent::DoubleDouble, double> {
  static inline double run(const hent::DoubleDouble& x) { return static_cast<double>(x); }
};
}  // namespace internal
}  // namespace Eigen
