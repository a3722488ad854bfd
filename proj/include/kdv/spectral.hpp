#pragma once

#include <vector>

#include "kdv/errors.hpp"
#include "kdv/rational.hpp"

namespace kdv {

/// The hyperelliptic curve y^2 = 4 mu(xi) with
/// mu(xi) = 4 xi^{-1} + mu_1 xi + ... + mu_{2g} xi^{2g}.
template <class K>
struct Curve {
    int g = 1;
    std::vector<K> mu;  // mu_1..mu_2g
};

using CurveQ = Curve<Rational>;
using CurveD = Curve<double>;

template <class K>
void validate_curve(const Curve<K>& c) {
    if (c.g < 1) throw MathDomainError("curve genus must be >= 1");
    if (static_cast<int>(c.mu.size()) != 2 * c.g)
        throw MathDomainError("curve needs 2g coefficients mu_1..mu_2g");
}

CurveD curve_to_double(const CurveQ& c);

/// mu_1..mu_{g-1} from the equation constants (a_{g-1} = 0 convention).
template <class K>
std::vector<K> mu_from_a(const std::vector<K>& a, int g);

/// Inverse of mu_from_a by triangular back-substitution.
template <class K>
std::vector<K> a_from_mu(const std::vector<K>& mu_prefix, int g);

template <class K>
K eval_mu(const Curve<K>& c, const K& xi) {
    validate_curve(c);
    if (scalar_is_zero(xi)) throw PoleAtZeroError();
    K acc = K(4) / xi;
    K p = K(1);
    for (const auto& m : c.mu) {
        p = p * xi;
        acc = acc + m * p;
    }
    return acc;
}

/// Coefficients (ascending) of mu~(z) = 4 z^{2g+1} + mu_1 z^{2g-1} + ... + mu_2g.
template <class K>
std::vector<K> mu_tilde_coeffs(const Curve<K>& c);

/// Number of repeated roots of mu~ counted with multiplicity
/// (degree of gcd(mu~, mu~')). Zero exactly when the affine curve is smooth.
int singular_count(const CurveQ& c);
int singular_count(const CurveD& c, double rel_threshold = 1e-10);

/// Sylvester resultant Res(mu~, mu~'); nonzero iff singular_count = 0.
Rational curve_discriminant_resultant(const CurveQ& c);

}  // namespace kdv
