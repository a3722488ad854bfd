#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "kdv/jetspace.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

/// Unordered degree-g collection of affine curve points (xi_i, y_i).
template <class K>
struct DivisorT {
    std::vector<std::pair<K, K>> points;
};

using DivisorQ = DivisorT<Rational>;
using DivisorC = DivisorT<std::complex<double>>;

/// Coefficients (ascending, length g+1) of 2 - u_1(0) xi - ... - u_g(0) xi^g.
template <class K>
std::vector<K> divisor_polynomial(const Jet<K>& j);

/// Forward map: jet -> (curve, divisor). The divisor points are the roots of
/// 2 - u(0,xi) paired with y_i = u'(0,xi_i).
/// Exact mode insists the polynomial splits over Q (the roots are recovered
/// from floating approximations and certified by exact substitution).
std::pair<CurveQ, DivisorQ> upsilon_exact(const JetQ& j);
std::pair<CurveD, DivisorC> upsilon_float(const JetD& j, double repeated_tol = 1e-8);

/// Inverse map: (curve, divisor) -> jet, defined for distinct nonzero xi_i.
JetQ upsilon_inv_exact(const CurveQ& c, const DivisorQ& d);
JetD upsilon_inv_float(const CurveD& c, const DivisorC& d,
                       double on_curve_tol = 1e-9);

/// Max of |y_i^2 - 4 mu(xi_i)| over the divisor (float convenience).
double divisor_curve_residual(const CurveD& c, const DivisorC& d);

}  // namespace kdv
