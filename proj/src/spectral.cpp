#include "kdv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace kdv {

CurveD curve_to_double(const CurveQ& c) {
    CurveD out;
    out.g = c.g;
    out.mu.reserve(c.mu.size());
    for (const auto& m : c.mu) out.mu.push_back(rat_to_double(m));
    return out;
}

template <class K>
std::vector<K> mu_from_a(const std::vector<K>& a, int g) {
    if (g < 1) throw MathDomainError("genus must be >= 1");
    if (static_cast<int>(a.size()) != g - 1)
        throw MathDomainError("expected g-1 constants a_0..a_{g-2}");
    std::vector<K> mu;
    mu.reserve(g - 1);
    for (int k = 1; k <= g - 1; ++k) {
        K v = K(8) * a[g - k - 1];
        for (int i = 1; i <= k - 2; ++i) v = v + K(4) * a[g - i - 1] * a[g - k + i];
        mu.push_back(v);
    }
    return mu;
}

template <class K>
std::vector<K> a_from_mu(const std::vector<K>& mu_prefix, int g) {
    if (g < 1) throw MathDomainError("genus must be >= 1");
    if (static_cast<int>(mu_prefix.size()) < g - 1)
        throw MathDomainError("expected at least g-1 curve coefficients");
    std::vector<K> a(std::max(0, g - 1), K(0));
    for (int k = 1; k <= g - 1; ++k) {
        K v = mu_prefix[k - 1];
        for (int i = 1; i <= k - 2; ++i) v = v - K(4) * a[g - i - 1] * a[g - k + i];
        a[g - k - 1] = v / K(8);
    }
    return a;
}

template std::vector<Rational> mu_from_a<Rational>(const std::vector<Rational>&, int);
template std::vector<double> mu_from_a<double>(const std::vector<double>&, int);
template std::vector<std::complex<double>> mu_from_a<std::complex<double>>(
    const std::vector<std::complex<double>>&, int);
template std::vector<Rational> a_from_mu<Rational>(const std::vector<Rational>&, int);
template std::vector<double> a_from_mu<double>(const std::vector<double>&, int);
template std::vector<std::complex<double>> a_from_mu<std::complex<double>>(
    const std::vector<std::complex<double>>&, int);

template <class K>
std::vector<K> mu_tilde_coeffs(const Curve<K>& c) {
    validate_curve(c);
    std::vector<K> coeffs(2 * c.g + 2, K(0));
    for (int m = 0; m <= 2 * c.g - 1; ++m) coeffs[m] = c.mu[2 * c.g - m - 1];
    coeffs[2 * c.g + 1] = K(4);
    return coeffs;
}

template std::vector<Rational> mu_tilde_coeffs<Rational>(const CurveQ&);
template std::vector<double> mu_tilde_coeffs<double>(const CurveD&);

namespace {

template <class K>
int poly_deg(const std::vector<K>& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (!scalar_is_zero(p[i])) return i;
    return -1;
}

std::vector<Rational> poly_ddz(const std::vector<Rational>& p) {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(i));
    return d;
}

std::vector<double> poly_ddz(const std::vector<double>& p) {
    std::vector<double> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * double(i));
    return d;
}

// Remainder of the monic Euclidean division a mod b (exact field).
std::vector<Rational> poly_rem(std::vector<Rational> a,
                               const std::vector<Rational>& b) {
    int db = poly_deg(b);
    int da;
    while ((da = poly_deg(a)) >= db && da >= 0) {
        Rational f = a[da] / b[db];
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        a[da] = 0;
    }
    a.resize(std::max(0, poly_deg(a)) + 1);
    return a;
}

}  // namespace

int singular_count(const CurveQ& c) {
    auto p = mu_tilde_coeffs(c);
    auto q = poly_ddz(p);
    // Euclidean remainder chain; degree of the last nonzero entry is deg gcd.
    while (poly_deg(q) >= 0) {
        auto r = poly_rem(p, q);
        p = q;
        q = r;
        if (poly_deg(q) < 0) break;
    }
    return poly_deg(p) < 0 ? 0 : poly_deg(p);
}

int singular_count(const CurveD& c, double rel_threshold) {
    auto p = mu_tilde_coeffs(c);
    auto q = poly_ddz(p);
    double scale = 0.0;
    for (double v : p) scale = std::max(scale, std::abs(v));
    const double eps = rel_threshold * std::max(scale, 1.0);
    auto chop = [&](std::vector<double>& v) {
        for (double& x : v)
            if (std::abs(x) < eps) x = 0.0;
        v.resize(std::max(0, poly_deg(v)) + 1);
    };
    chop(p);
    chop(q);
    while (poly_deg(q) >= 0) {
        int da = poly_deg(p), db = poly_deg(q);
        std::vector<double> a = p;
        while ((da = poly_deg(a)) >= db && da >= 0) {
            double f = a[da] / q[db];
            for (int i = 0; i <= db; ++i) a[da - db + i] -= f * q[i];
            a[da] = 0.0;
        }
        chop(a);
        // Keep the chain numerically tame.
        double m = 0.0;
        for (double v : a) m = std::max(m, std::abs(v));
        if (m > 0)
            for (double& v : a) v /= m;
        p = q;
        q = a;
    }
    return poly_deg(p) < 0 ? 0 : poly_deg(p);
}

Rational curve_discriminant_resultant(const CurveQ& c) {
    auto p = mu_tilde_coeffs(c);
    auto q = poly_ddz(p);
    int dp = poly_deg(p), dq = poly_deg(q);
    if (dp < 1) return Rational(0);
    // Sylvester matrix of size dp + dq.
    int n = dp + dq;
    std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n, Rational(0)));
    for (int r = 0; r < dq; ++r)
        for (int i = 0; i <= dp; ++i) s[r][r + dp - i] = p[i];
    for (int r = 0; r < dp; ++r)
        for (int i = 0; i <= dq; ++i) s[dq + r][r + dq - i] = q[i];
    // Fraction-friendly Gaussian determinant.
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row)
            if (sgn(s[row][col]) != 0) {
                piv = row;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            std::swap(s[piv], s[col]);
            det = -det;
        }
        det *= s[col][col];
        Rational inv = Rational(1) / s[col][col];
        for (int row = col + 1; row < n; ++row) {
            if (sgn(s[row][col]) == 0) continue;
            Rational f = s[row][col] * inv;
            for (int j = col; j < n; ++j) s[row][j] -= f * s[col][j];
        }
    }
    return det;
}

}  // namespace kdv
