#pragma once

#include "mahler/gaussian.hpp"

namespace mahler {

/// Point (r, b) of the universal cover of C*, projecting to r e^{ib}.
class CoverPoint {
 public:
  /// Throws ValidationError unless r > 0 and both coordinates are finite.
  CoverPoint(double r, double b);

  double r() const { return r_; }
  double b() const { return b_; }

  Complex project() const { return std::polar(r_, b_); }
  /// log r + i b, single-valued on the cover.
  Complex log() const { return {std::log(r_), b_}; }
  /// (r^p, p b).
  CoverPoint phi(int p) const;
  /// Same projection on the next sheet: b + 2 pi.
  CoverPoint next_sheet() const;

  bool in_sigma0() const { return r_ < 1.0; }
  bool in_sigma_inf() const { return r_ > 1.0; }

 private:
  double r_;
  double b_;
};

}  // namespace mahler
