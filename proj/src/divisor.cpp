#include "kdv/divisor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "kdv/linalg.hpp"
#include "kdv/operators.hpp"

namespace kdv {

namespace {

using Complex = std::complex<double>;

std::vector<Complex> companion_roots(const std::vector<double>& coeffs) {
    // coeffs ascending, leading nonzero.
    int n = static_cast<int>(coeffs.size()) - 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -coeffs[i] / coeffs[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
    return roots;
}

/// Nearest small-denominator rational via continued fractions.
Rational rationalize(double x, long max_den = 100000000L) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 4e18 || fl < -4e18) break;
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double den = v - fl;
        if (std::abs(den) < 1e-14) break;
        v = 1.0 / den;
    }
    if (q1 == 0) return Rational(0);
    return rat(p1, q1);
}

template <class K>
K eval_poly(const std::vector<K>& coeffs, const K& x) {
    K acc = K(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Splits p into A + B*s for a polynomial that is linear in the symbol s;
/// every other symbol must be resolved by the value map.
template <class K>
std::pair<K, K> linear_in_symbol(const DiffPoly& p, Sym s,
                                 const std::function<K(Sym)>& value) {
    K a = K(0), b = K(0);
    for (const auto& [mon, c] : p.terms()) {
        K v = ScalarTraits<K>::from_rational(c);
        int s_exp = 0;
        for (const auto& [sym, e] : mon) {
            if (sym == s) {
                s_exp = e;
                continue;
            }
            K w = value(sym);
            for (int i = 0; i < e; ++i) v = v * w;
        }
        if (s_exp == 0)
            a = a + v;
        else if (s_exp == 1)
            b = b + v;
        else
            throw MathDomainError("expected linear dependence on " + s.name());
    }
    return {a, b};
}

template <class K>
std::vector<K> divisor_polynomial_impl(const Jet<K>& j) {
    auto vals = generating_values(j);
    std::vector<K> coeffs(j.g + 1, K(0));
    coeffs[0] = K(2);
    for (int k = 1; k <= j.g; ++k) coeffs[k] = K(0) - vals.u[k - 1];
    return coeffs;
}

/// Shared inverse-map construction over an exact or complex field.
template <class K>
Jet<K> upsilon_inv_generic(int g, const std::vector<K>& mu,
                           const std::vector<std::pair<K, K>>& points,
                           const std::function<void(const K&, const K&)>& check_on_curve) {
    if (static_cast<int>(points.size()) != g)
        throw MathDomainError("divisor must have exactly g points");
    for (const auto& [xi, y] : points)
        if (scalar_is_zero(xi)) throw ZeroXiError();
    for (const auto& [xi, y] : points) check_on_curve(xi, y);

    // u_k(0) from the factorization 2 - u(0,xi) = s * prod (xi - xi_i),
    // the constant term pinned to 2.
    std::vector<K> prod{K(1)};
    for (const auto& [xi, y] : points) {
        std::vector<K> next(prod.size() + 1, K(0));
        for (std::size_t m = 0; m < prod.size(); ++m) {
            next[m + 1] = next[m + 1] + prod[m];
            next[m] = next[m] - xi * prod[m];
        }
        prod = next;
    }
    K s = K(2) / prod[0];
    std::vector<K> u0(g + 1, K(0));  // u0[k] = u_k(0), index from 1
    for (int k = 1; k <= g; ++k) u0[k] = K(0) - s * prod[k];

    // u_k'(0) from u'(0, xi_i) = y_i (a Vandermonde-type system).
    std::vector<std::vector<K>> vm(g, std::vector<K>(g));
    std::vector<K> rhs(g);
    for (int i = 0; i < g; ++i) {
        K p = K(1);
        for (int k = 1; k <= g; ++k) {
            p = p * points[i].first;
            vm[i][k - 1] = p;
        }
        rhs[i] = points[i].second;
    }
    auto du_sol = solve_square<K>(vm, rhs);
    if (!du_sol)
        throw RepeatedRootsError("divisor points do not determine u'(0) uniquely");
    std::vector<K> du0(g + 1, K(0));
    for (int k = 1; k <= g; ++k) du0[k] = (*du_sol)[k - 1];

    Jet<K> jet;
    jet.g = g;
    std::vector<K> mu_prefix(mu.begin(), mu.begin() + (g - 1));
    jet.a = a_from_mu<K>(mu_prefix, g);
    jet.c.assign(2 * g + 1, K(0));
    std::vector<bool> have(2 * g + 1, false);
    jet.c[0] = u0[1];
    have[0] = true;
    if (g >= 1) {
        jet.c[1] = du0[1];
        have[1] = true;
    }
    std::function<K(Sym)> value = [&](Sym sym) -> K {
        switch (sym.kind()) {
            case SymKind::UJet: {
                int d = sym.index();
                if (d > 2 * g || !have[d]) throw MissingSymbolError(sym.name());
                return jet.c[d];
            }
            case SymKind::Mu: {
                int i = sym.index();
                if (i < 1 || i > 2 * g) throw MissingSymbolError(sym.name());
                return mu[i - 1];
            }
            case SymKind::A: {
                int i = sym.index();
                if (i >= g - 1) throw MissingSymbolError(sym.name());
                return jet.a[i];
            }
        }
        throw MissingSymbolError(sym.name());
    };
    auto solve_top = [&](const DiffPoly& p, int top, const K& target) {
        auto [a0, b0] = linear_in_symbol<K>(p, Sym::u(top), value);
        if (scalar_is_zero(b0))
            throw ConstructionFailedError("jet recovery lost its pivot");
        jet.c[top] = (target - a0) / b0;
        have[top] = true;
    };
    for (int k = 2; k <= g; ++k) {
        solve_top(theta_poly(k), 2 * k - 2, u0[k]);
        solve_top(theta_poly(k).ddx(), 2 * k - 1, du0[k]);
    }
    solve_top(theta_poly(g + 1), 2 * g, K(0));
    return jet;
}

}  // namespace

template <class K>
std::vector<K> divisor_polynomial(const Jet<K>& j) {
    return divisor_polynomial_impl(j);
}

template std::vector<Rational> divisor_polynomial<Rational>(const JetQ&);
template std::vector<double> divisor_polynomial<double>(const JetD&);

std::pair<CurveQ, DivisorQ> upsilon_exact(const JetQ& j) {
    validate_jet(j);
    auto coeffs = divisor_polynomial(j);
    if (sgn(coeffs[j.g]) == 0)
        throw DegenerateLeadingError("u_g(0) = 0: divisor degenerates");
    CurveQ curve{j.g, mu_from_jet(j)};

    std::vector<double> dc(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) dc[i] = rat_to_double(coeffs[i]);
    auto approx = companion_roots(dc);
    std::vector<Rational> roots;
    for (const auto& r : approx) {
        if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r.real())))
            throw MathDomainError(
                "divisor polynomial has nonreal roots; exact mode needs a "
                "rational splitting (use float mode)");
        Rational cand = rationalize(r.real());
        Rational val = eval_poly(coeffs, cand);
        if (sgn(val) != 0)
            throw MathDomainError(
                "divisor polynomial does not split over the rationals "
                "(use float mode)");
        roots.push_back(cand);
    }
    std::sort(roots.begin(), roots.end());
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (roots[i] == roots[i - 1])
            throw RepeatedRootsError("repeated divisor point (exact)");
    auto vals = generating_values(j);
    DivisorQ d;
    for (const auto& xi : roots) {
        Rational y(0), p(1);
        for (int k = 1; k <= j.g; ++k) {
            p *= xi;
            y += vals.du[k - 1] * p;
        }
        d.points.emplace_back(xi, y);
    }
    return {curve, d};
}

std::pair<CurveD, DivisorC> upsilon_float(const JetD& j, double repeated_tol) {
    validate_jet(j);
    auto coeffs = divisor_polynomial(j);
    if (std::abs(coeffs[j.g]) < 1e-12)
        throw DegenerateLeadingError("u_g(0) = 0: divisor degenerates");
    CurveD curve{j.g, mu_from_jet(j)};
    auto roots = companion_roots(coeffs);
    double max_mag = 0.0;
    for (const auto& r : roots) max_mag = std::max(max_mag, std::abs(r));
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t k = i + 1; k < roots.size(); ++k)
            if (std::abs(roots[i] - roots[k]) <= repeated_tol * std::max(max_mag, 1.0))
                throw RepeatedRootsError("divisor points too close to invert");
    auto vals = generating_values(j);
    DivisorC d;
    for (const auto& xi : roots) {
        Complex y(0.0), p(1.0);
        for (int k = 1; k <= j.g; ++k) {
            p *= xi;
            y += vals.du[k - 1] * p;
        }
        d.points.emplace_back(xi, y);
    }
    std::sort(d.points.begin(), d.points.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    return {curve, d};
}

JetQ upsilon_inv_exact(const CurveQ& c, const DivisorQ& d) {
    validate_curve(c);
    std::vector<std::pair<Rational, Rational>> pts = d.points;
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].first == pts[i - 1].first)
            throw RepeatedRootsError("repeated divisor point (exact)");
    auto check = [&](const Rational& xi, const Rational& y) {
        Rational res = y * y - Rational(4) * eval_mu(c, xi);
        if (sgn(res) != 0)
            throw PointOffCurveError("divisor point misses the curve: xi = " +
                                     rat_to_string(xi));
    };
    return upsilon_inv_generic<Rational>(c.g, c.mu, pts, check);
}

JetD upsilon_inv_float(const CurveD& c, const DivisorC& d, double on_curve_tol) {
    validate_curve(c);
    std::vector<Complex> mu(c.mu.begin(), c.mu.end());
    double scale = 1.0;
    for (const auto& [xi, y] : d.points)
        scale = std::max({scale, std::abs(xi), std::abs(y)});
    auto check = [&](const Complex& xi, const Complex& y) {
        Complex m = Complex(4.0) / xi;
        Complex p(1.0);
        for (const auto& v : c.mu) {
            p *= xi;
            m += v * p;
        }
        if (std::abs(y * y - 4.0 * m) > on_curve_tol * scale * scale)
            throw PointOffCurveError("divisor point misses the curve (float)");
    };
    Jet<Complex> jc = upsilon_inv_generic<Complex>(c.g, mu, d.points, check);
    JetD out;
    out.g = jc.g;
    double imag_tol = 1e-7;
    for (const auto& v : jc.a) {
        if (std::abs(v.imag()) > imag_tol * (1.0 + std::abs(v.real())))
            throw MathDomainError("divisor is not closed under conjugation");
        out.a.push_back(v.real());
    }
    for (const auto& v : jc.c) {
        if (std::abs(v.imag()) > imag_tol * (1.0 + std::abs(v.real())))
            throw MathDomainError("divisor is not closed under conjugation");
        out.c.push_back(v.real());
    }
    return out;
}

double divisor_curve_residual(const CurveD& c, const DivisorC& d) {
    double worst = 0.0;
    for (const auto& [xi, y] : d.points) {
        Complex m = Complex(4.0) / xi;
        Complex p(1.0);
        for (const auto& v : c.mu) {
            p *= xi;
            m += v * p;
        }
        worst = std::max(worst, std::abs(y * y - 4.0 * m));
    }
    return worst;
}

}  // namespace kdv
