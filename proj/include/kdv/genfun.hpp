#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kdv/errors.hpp"
#include "kdv/rational.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

/// Sparse Laurent polynomial in one variable.
template <class K>
class Laurent {
public:
    Laurent() = default;
    static Laurent monomial(int p, const K& v) {
        Laurent l;
        l.set(p, v);
        return l;
    }
    static Laurent constant(const K& v) { return monomial(0, v); }

    void set(int p, const K& v) {
        if (scalar_is_zero(v))
            c_.erase(p);
        else
            c_[p] = v;
    }
    K coeff(int p) const {
        auto it = c_.find(p);
        return it == c_.end() ? K(0) : it->second;
    }
    const std::map<int, K>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int min_pow() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_pow() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    Laurent operator+(const Laurent& o) const {
        Laurent r = *this;
        for (const auto& [p, v] : o.c_) r.set(p, r.coeff(p) + v);
        return r;
    }
    Laurent operator-(const Laurent& o) const {
        Laurent r = *this;
        for (const auto& [p, v] : o.c_) r.set(p, r.coeff(p) - v);
        return r;
    }
    Laurent operator*(const Laurent& o) const {
        Laurent r;
        for (const auto& [p, v] : c_)
            for (const auto& [q, w] : o.c_) r.set(p + q, r.coeff(p + q) + v * w);
        return r;
    }
    Laurent operator*(const K& s) const {
        Laurent r;
        if (scalar_is_zero(s)) return r;
        for (const auto& [p, v] : c_) r.c_[p] = v * s;
        return r;
    }
    bool operator==(const Laurent& o) const { return c_ == o.c_; }

    Laurent shifted(int dp) const {
        Laurent r;
        for (const auto& [p, v] : c_) r.c_[p + dp] = v;
        return r;
    }
    Laurent derivative() const {
        Laurent r;
        for (const auto& [p, v] : c_)
            if (p != 0) r.set(p - 1, v * K(p));
        return r;
    }
    template <class X>
    X eval(const X& xi) const {
        X acc = X(0);
        for (const auto& [p, v] : c_) {
            X pw = X(1);
            for (int i = 0; i < (p > 0 ? p : -p); ++i) pw = pw * xi;
            if (p < 0) pw = X(1) / pw;
            acc = acc + X(v) * pw;
        }
        return acc;
    }

private:
    std::map<int, K> c_;
};

/// Sparse polynomial in two variables with integer (possibly negative) powers.
template <class K>
class BiPoly {
public:
    BiPoly() = default;
    void set(int i, int j, const K& v) {
        if (scalar_is_zero(v))
            c_.erase({i, j});
        else
            c_[{i, j}] = v;
    }
    K coeff(int i, int j) const {
        auto it = c_.find({i, j});
        return it == c_.end() ? K(0) : it->second;
    }
    const std::map<std::pair<int, int>, K>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    BiPoly operator+(const BiPoly& o) const {
        BiPoly r = *this;
        for (const auto& [ij, v] : o.c_) r.set(ij.first, ij.second, r.coeff(ij.first, ij.second) + v);
        return r;
    }
    BiPoly operator-(const BiPoly& o) const {
        BiPoly r = *this;
        for (const auto& [ij, v] : o.c_) r.set(ij.first, ij.second, r.coeff(ij.first, ij.second) - v);
        return r;
    }
    BiPoly operator*(const BiPoly& o) const {
        BiPoly r;
        for (const auto& [ij, v] : c_)
            for (const auto& [kl, w] : o.c_) {
                int i = ij.first + kl.first, j = ij.second + kl.second;
                r.set(i, j, r.coeff(i, j) + v * w);
            }
        return r;
    }
    BiPoly operator*(const K& s) const {
        BiPoly r;
        if (scalar_is_zero(s)) return r;
        for (const auto& [ij, v] : c_) r.c_[ij] = v * s;
        return r;
    }
    bool operator==(const BiPoly& o) const { return c_ == o.c_; }

    bool is_symmetric() const {
        for (const auto& [ij, v] : c_) {
            K d = v - coeff(ij.second, ij.first);
            if (!scalar_is_zero(d)) return false;
        }
        return true;
    }
    /// Substitution eta := xi.
    Laurent<K> diagonal() const {
        Laurent<K> r;
        for (const auto& [ij, v] : c_)
            r.set(ij.first + ij.second, r.coeff(ij.first + ij.second) + v);
        return r;
    }
    /// Partial derivative in the first variable.
    BiPoly dxi() const {
        BiPoly r;
        for (const auto& [ij, v] : c_)
            if (ij.first != 0) r.set(ij.first - 1, ij.second, v * K(ij.first));
        return r;
    }
    template <class X>
    X eval(const X& xi, const X& eta) const {
        X acc = X(0);
        auto pw = [](const X& b, int p) {
            X acc2 = X(1);
            for (int i = 0; i < (p > 0 ? p : -p); ++i) acc2 = acc2 * b;
            return p < 0 ? X(1) / acc2 : acc2;
        };
        for (const auto& [ij, v] : c_) acc = acc + X(v) * pw(xi, ij.first) * pw(eta, ij.second);
        return acc;
    }

    static BiPoly outer(const Laurent<K>& f_xi, const Laurent<K>& g_eta) {
        BiPoly r;
        for (const auto& [p, v] : f_xi.terms())
            for (const auto& [q, w] : g_eta.terms()) r.set(p, q, r.coeff(p, q) + v * w);
        return r;
    }

private:
    std::map<std::pair<int, int>, K> c_;
};

/// Sparse polynomial in k variables; only used by the k-ary bracket.
template <class K>
class MultiPoly {
public:
    explicit MultiPoly(int vars) : vars_(vars) {}
    int vars() const { return vars_; }
    void set(const std::vector<int>& e, const K& v) {
        if (scalar_is_zero(v))
            c_.erase(e);
        else
            c_[e] = v;
    }
    K coeff(const std::vector<int>& e) const {
        auto it = c_.find(e);
        return it == c_.end() ? K(0) : it->second;
    }
    const std::map<std::vector<int>, K>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, v] : o.c_) r.set(e, r.coeff(e) + v);
        return r;
    }
    MultiPoly operator*(const K& s) const {
        MultiPoly r(vars_);
        if (scalar_is_zero(s)) return r;
        for (const auto& [e, v] : c_) r.c_[e] = v * s;
        return r;
    }

private:
    int vars_;
    std::map<std::vector<int>, K> c_;
};

/// B(f,h)(xi,eta) = xi eta (f(xi)h(eta) - f(eta)h(xi)) / (2(xi-eta));
/// the divided difference is exact because the numerator vanishes on the
/// diagonal.
template <class K>
BiPoly<K> bop(const Laurent<K>& f, const Laurent<K>& h);

/// Generalized translation (T(h) f)(xi, eta) = B(f, h).
template <class K>
BiPoly<K> translate(const Laurent<K>& h, const Laurent<K>& f) {
    return bop(f, h);
}

/// k-ary bracket: alternating sum over permutations divided by the
/// Vandermonde determinant, scaled by prod xi_i^{k-1} / 2^{k-1}.
template <class K>
MultiPoly<K> bop_k(const std::vector<Laurent<K>>& fs);

/// Coefficient of eta^k in the expansion of (D^eta f)(xi).
template <class K>
Laurent<K> d_coeff(int k, const Laurent<K>& f);

/// One-variable Hirota bilinear: f' g - f g'.
template <class K>
Laurent<K> hirota(const Laurent<K>& f, const Laurent<K>& g) {
    return f.derivative() * g - f * g.derivative();
}

template <class K>
struct PolarizationReport {
    bool diagonal_ok = false;
    bool derivative_ok = false;
    Laurent<K> diagonal_residual;
    Laurent<K> derivative_residual;
    bool ok() const { return diagonal_ok && derivative_ok; }
};

/// Checks F(xi,xi) = 2 f(xi) and dF/dxi on the diagonal = f'(xi).
template <class K>
PolarizationReport<K> polarization_check(const BiPoly<K>& F, const Laurent<K>& f);

template <class K>
Laurent<K> mu_laurent(const Curve<K>& c);

/// The symmetric two-variable extension of mu with mu(xi,xi) = 2 mu(xi).
template <class K>
BiPoly<K> mu_polarized(const Curve<K>& c);

/// The basic generating function P(xi,eta); inputs are the values of the
/// auxiliary functions and their first two x-derivatives at one point.
/// float_tol: relative tolerance for the double-divided-difference remainder
/// (ignored for exact K).
template <class K>
BiPoly<K> basic_generating_function(const std::vector<K>& u_vals,
                                    const std::vector<K>& du_vals,
                                    const std::vector<K>& ddu_vals,
                                    const Curve<K>& curve,
                                    double float_tol = 1e-9);

/// Structure constants of the d_i algebra: the expansion of T(h) xi^k.
template <class K>
BiPoly<K> structure_constants(const Laurent<K>& h, int k) {
    return bop(Laurent<K>::monomial(k, K(1)), h);
}

/// Exact division by (x_a - x_b); throws NonVanishingNumeratorError if the
/// remainder exceeds rel_tol * |numerator| (0 means exact).
template <class K>
MultiPoly<K> divide_difference(const MultiPoly<K>& num, int a, int b,
                               double rel_tol = 0.0);

template <class K>
MultiPoly<K> bipoly_to_multi(const BiPoly<K>& p);
template <class K>
BiPoly<K> multi_to_bipoly(const MultiPoly<K>& p);

}  // namespace kdv
