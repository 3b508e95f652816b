#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>

namespace cvx {

namespace detail {
inline double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
}  // namespace detail

/// Closed interval [lo, hi] with outward-rounded arithmetic.
///
/// Every operation widens its result by one ulp on each side, so the true
/// real result of an operation on enclosed values is always enclosed.
/// Construction from a single double is exact (no widening).
class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0) {}
  Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: implicit by design
  Interval(double lo, double hi) : lo_(lo), hi_(hi) { assert(lo <= hi); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double width() const { return hi_ - lo_; }

  /// Largest absolute value attained on the interval.
  double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
  /// Smallest absolute value attained on the interval.
  double mig() const {
    if (lo_ <= 0.0 && 0.0 <= hi_) return 0.0;
    return std::min(std::fabs(lo_), std::fabs(hi_));
  }

  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool strictly_positive() const { return lo_ > 0.0; }
  bool strictly_negative() const { return hi_ < 0.0; }
  bool is_point() const { return lo_ == hi_; }

  Interval operator-() const { return Interval(-hi_, -lo_); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(detail::next_down(a.lo_ + b.lo_), detail::next_up(a.hi_ + b.hi_));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(detail::next_down(a.lo_ - b.hi_), detail::next_up(a.hi_ - b.lo_));
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const double p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_;
    const double p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return Interval(detail::next_down(std::min(std::min(p1, p2), std::min(p3, p4))),
                    detail::next_up(std::max(std::max(p1, p2), std::max(p3, p4))));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    assert(!b.contains(0.0) && "interval division by an interval containing zero");
    const double p1 = a.lo_ / b.lo_, p2 = a.lo_ / b.hi_;
    const double p3 = a.hi_ / b.lo_, p4 = a.hi_ / b.hi_;
    return Interval(detail::next_down(std::min(std::min(p1, p2), std::min(p3, p4))),
                    detail::next_up(std::max(std::max(p1, p2), std::max(p3, p4))));
  }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << "[" << x.lo_ << ", " << x.hi_ << "]";
  }

 private:
  double lo_, hi_;
};

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

inline Interval abs(const Interval& x) { return Interval(x.mig(), x.mag()); }

inline Interval exp(const Interval& x) {
  return Interval(std::max(0.0, detail::next_down(std::exp(x.lo()))),
                  detail::next_up(std::exp(x.hi())));
}

inline Interval log(const Interval& x) {
  assert(x.lo() > 0.0);
  return Interval(detail::next_down(std::log(x.lo())), detail::next_up(std::log(x.hi())));
}

inline Interval sqrt(const Interval& x) {
  assert(x.lo() >= 0.0);
  return Interval(std::max(0.0, detail::next_down(std::sqrt(x.lo()))),
                  detail::next_up(std::sqrt(x.hi())));
}

/// x^n for integer n >= 0, sharp on monotone pieces.
inline Interval pow_int(const Interval& x, int n) {
  assert(n >= 0);
  if (n == 0) return Interval(1.0);
  Interval r = x;
  for (int i = 1; i < n; ++i) r *= x;
  if (n % 2 == 0 && r.lo() < 0.0) r = Interval(0.0, r.hi());
  return r;
}

/// Generic scalar helpers so templated code works for double and Interval.
inline double midpoint(double x) { return x; }
inline double midpoint(const Interval& x) { return x.mid(); }
inline double upper(double x) { return x; }
inline double upper(const Interval& x) { return x.hi(); }
inline double lower(double x) { return x; }
inline double lower(const Interval& x) { return x.lo(); }

}  // namespace cvx
