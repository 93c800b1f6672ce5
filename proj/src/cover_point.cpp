#include "mahler/cover_point.hpp"

#include <cmath>
#include <numbers>

#include "mahler/error.hpp"

namespace mahler {

CoverPoint::CoverPoint(double r, double b) : r_(r), b_(b) {
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(b)) {
    throw MahlerError(ErrorKind::ValidationError, "cover point needs finite r > 0 and finite b");
  }
}

CoverPoint CoverPoint::phi(int p) const { return {std::pow(r_, p), p * b_}; }

CoverPoint CoverPoint::next_sheet() const { return {r_, b_ + 2.0 * std::numbers::pi}; }

}  // namespace mahler
