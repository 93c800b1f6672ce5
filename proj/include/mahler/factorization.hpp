#pragma once

#include <vector>

#include "mahler/exact.hpp"

namespace mahler {

/// D_{i,u}: identity with (i,i) replaced by u. T_{i,l}: identity with row i
/// replaced by l. Indices are 0-based.
struct ElementaryFactor {
  enum class Kind { D, T };

  Kind kind;
  std::size_t n;
  std::size_t i;
  RatFun u;                          // D only
  std::vector<GaussianRational> row;  // T only

  static ElementaryFactor d(std::size_t n, std::size_t i, RatFun u);
  /// Throws ValidationError if row[i] == 0.
  static ElementaryFactor t(std::size_t i, std::vector<GaussianRational> row);

  RatMatrix matrix() const;
};

struct FactorStep {
  ElementaryFactor t;
  ElementaryFactor d;
};

/// M = u^{-k} (T_1 D_1) ... (T_r D_r) R with R regular at the place.
struct Factorization {
  Place place;
  RatFun uniformizer;
  int k = 0;
  std::vector<FactorStep> steps;
  RatMatrix regular_part;
  /// Valuation of det(u^k M) at the place; equals steps.size().
  int det_valuation = 0;
};

/// u = (z-1)/(z+1).
Factorization factor_regular_at_1(const RatMatrix& m);
/// u = z.
Factorization factor_regular_at_0(const RatMatrix& m);

/// u^{-k} (T_1 D_1) ... (T_r D_r).
RatMatrix prefactor(const Factorization& f);
RatMatrix reassemble(const Factorization& f);

/// Analytic at the place with invertible value.
bool regular_at(const RatMatrix& m, Place place);

}  // namespace mahler
