#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kdv/diffpoly.hpp"

namespace kdv {

/// Action of d/dt_k on the coefficient ring: u{j} maps to the (j+1)-st
/// x-derivative of Theta_k, parameters map to zero. k = 1 is d/dx.
DiffPoly partial_t(const DiffPoly& p, int k);

/// Differential operator in d/dt_1 .. d/dt_g with DiffPoly coefficients.
class DiffOperator {
public:
    using Index = std::vector<int>;  // derivative powers per variable
    using TermMap = std::map<Index, DiffPoly>;

    explicit DiffOperator(int genus);
    static DiffOperator multiplication(const DiffPoly& p, int genus);
    static DiffOperator partial(int k, int genus, int power = 1);
    static DiffOperator identity(int genus);

    int genus() const { return genus_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    DiffPoly coeff(const Index& idx) const;
    int order() const;

    DiffOperator& operator+=(const DiffOperator& o);
    DiffOperator& operator-=(const DiffOperator& o);
    DiffOperator operator+(const DiffOperator& o) const;
    DiffOperator operator-(const DiffOperator& o) const;
    DiffOperator operator-() const;
    DiffOperator operator*(const Rational& c) const;
    bool operator==(const DiffOperator& o) const;

    /// Operator product (this applied after o), with derivatives acting on
    /// the coefficients of o by the Leibniz rule.
    DiffOperator compose(const DiffOperator& o) const;

    /// Formal conjugate under d/dt_k -> -d/dt_k, f -> f.
    DiffOperator adjoint() const;

    bool is_multiplication() const;

    /// Reinterprets a pure-x operator inside a larger variable ring.
    DiffOperator extend_genus(int genus) const;

    DiffOperator map_coeffs(const std::function<DiffPoly(const DiffPoly&)>& f) const;

    /// Common value of weight(coeff) + sum m_k (2k-1), or nullopt.
    std::optional<long> hom_weight(int genus_for_a = -1) const;

    std::string str(int genus_for_a = -1) const;

    void add_term(const Index& idx, const DiffPoly& p);

private:
    int genus_;
    TermMap terms_;
};

DiffOperator op_commutator(const DiffOperator& a, const DiffOperator& b);

/// r_k chain of the Lenard recursion; r_0 = u'.
const DiffPoly& lenard_r(int k);

/// One Lenard step: f -> f''/4 - u' * antiderivative(f)/2 - u f.
DiffPoly lenard_step(const DiffPoly& f);

/// The Schroedinger operator d^2/dx^2 - u.
DiffOperator schroedinger_l(int genus = 1);

/// Anti-symmetric homogeneous operator of order 2k+1 with unit leading
/// coefficient whose commutator with L is multiplication by r_k. Built by
/// an ansatz on the graded basis plus an exact linear solve.
DiffOperator build_a(int k);

/// The third-order operators U_i of the commuting family, genus g.
DiffOperator build_u(int i, int g);

/// U_1 L^{g-1} + U_2 L^{g-2} + ... + U_g.
DiffOperator u_composite(int g);

/// Rewrites u{j}, j >= 2g+1, using the stationary equation
/// r_g + sum a_k r_k = 0 (normalized a_{g-1} = 0) and its x-derivatives.
DiffPoly reduce_stationary(const DiffPoly& p, int g);
DiffOperator reduce_stationary_op(const DiffOperator& a, int g);

/// mu_k as a polynomial in the a-constants, k = 1..g-1.
DiffPoly mu_in_a(int k, int g);

/// Eliminates mu_1..mu_{g-1} in favor of the a-constants.
DiffPoly mu_to_a(const DiffPoly& p, int g);

/// Residual of 4 U(L)^2 - mu~(L) with all curve coefficients expressed
/// through the solution jet; identically zero on the stationary equation.
/// The optional shift perturbs mu_2g, for probing linearity of the residual.
DiffOperator check_relation(int g, const Rational& mu_2g_shift = Rational(0));

}  // namespace kdv
