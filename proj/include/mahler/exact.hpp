#pragma once

#include <Eigen/Dense>
#include <string>

#include "mahler/gaussian.hpp"
#include "mahler/matrix.hpp"
#include "mahler/poly.hpp"
#include "mahler/ratfun.hpp"

namespace mahler {

using QMatrix = DenseMatrix<GaussianRational>;
using RatMatrix = DenseMatrix<RatFun>;
using CMatrix = Eigen::MatrixXcd;

inline Complex ratfun_eval(const RatFun& f, Complex z) { return f(z); }
inline RatFun mahler_substitute(const RatFun& f, int p) { return f.mahler(p); }
inline int valuation(const RatFun& f, Place place) { return f.valuation(place); }

/// Fraction-free versions for rational matrices: denominators are cleared
/// row by row and the polynomial matrix is eliminated with Bareiss' method.
RatFun determinant(const RatMatrix& m);
/// Throws SingularMatrix.
RatMatrix inverse(const RatMatrix& m);

/// Entrywise z -> z^p.
RatMatrix mahler_substitute(const RatMatrix& m, int p);
/// Entrywise z -> 1/z.
RatMatrix at_inverse_variable(const RatMatrix& m);
/// Exact value matrix; throws NotAnalytic naming the offending entry.
QMatrix value_at(const RatMatrix& m, Place place);
bool analytic_at(const RatMatrix& m, Place place);
/// Minimal valuation over the nonzero entries at the place.
int min_valuation(const RatMatrix& m, Place place);
CMatrix evaluate(const RatMatrix& m, Complex z);

RatMatrix to_ratmatrix(const QMatrix& m);
CMatrix to_complex(const QMatrix& m);
QMatrix to_exact(const CMatrix& m, long max_den);

CMatrix kronecker(const CMatrix& a, const CMatrix& b);

/// Operator 1-norm (maximum absolute column sum).
double norm1(const CMatrix& m);

std::string to_string(const QMatrix& m);
std::string to_string(const RatMatrix& m);

}  // namespace mahler
