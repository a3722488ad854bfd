#pragma once

#include <vector>

#include "kdv/diffpoly.hpp"

namespace kdv {

/// u_k expressed through u and mu_1..mu_{k-1} by matching powers of xi in
/// the curve identity; Theta_1 = u. Cached, genus independent.
const DiffPoly& theta_poly(int k);

/// Bound-checked view of the recursion for genus g: valid for 1 <= k <= g+1,
/// where k = g+1 is the left side of the closing constraint u_{g+1} = 0.
DiffPoly theta(int k, int g);

/// mu_k as a differential polynomial in the jet of u (and mu_1..mu_{g-1}),
/// obtained from the xi^k coefficient with u_m = 0 for m > g; g <= k <= 2g.
DiffPoly mu_sym_poly(int k, int g);

/// A point of the solution space: genus, equation constants a_0..a_{g-2}
/// (with a_{g-1} normalized to zero) and the jet c_j = u^(j)(0), j = 0..2g.
template <class K>
struct Jet {
    int g = 1;
    std::vector<K> a;
    std::vector<K> c;
};

using JetQ = Jet<Rational>;
using JetD = Jet<double>;

template <class K>
void validate_jet(const Jet<K>& j) {
    if (j.g < 1) throw MathDomainError("genus must be >= 1");
    if (static_cast<int>(j.a.size()) != j.g - 1)
        throw MathDomainError("jet needs g-1 constants a_0..a_{g-2}");
    if (static_cast<int>(j.c.size()) != 2 * j.g + 1)
        throw MathDomainError("jet needs 2g+1 derivative values");
}

JetD jet_to_double(const JetQ& j);

/// Evaluates a differential polynomial at a jet point; mu symbols are
/// resolved through the a-constants, a symbols through the jet directly.
template <class K>
K jet_eval(const DiffPoly& p, const Jet<K>& j);

/// The curve coefficients mu_1..mu_2g attached to a jet.
template <class K>
std::vector<K> mu_from_jet(const Jet<K>& j);

/// Values u_k, u_k', u_k'' (k = 1..g) of the auxiliary functions at a jet.
template <class K>
struct GeneratingValues {
    std::vector<K> u, du, ddu;
};
template <class K>
GeneratingValues<K> generating_values(const Jet<K>& j);

/// Velocity of the x-translation flow on jet coordinates.
std::vector<double> x_flow(const JetD& j);

/// Velocity of the t_k flow, 1 <= k <= g (k = 1 coincides with x_flow).
std::vector<double> t_flow(int k, const JetD& j);

/// Scaling action u(x) -> kappa^2 u(kappa x) on jet coordinates.
template <class K>
Jet<K> rescale(const Jet<K>& j, const K& kappa);

}  // namespace kdv
