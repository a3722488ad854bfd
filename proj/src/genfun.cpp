#include "kdv/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace kdv {

namespace {

template <class K>
double poly_scale(const MultiPoly<K>& p) {
    double m = 0.0;
    for (const auto& [e, v] : p.terms()) m = std::max(m, ScalarTraits<K>::abs(v));
    return m;
}

}  // namespace

template <class K>
MultiPoly<K> bipoly_to_multi(const BiPoly<K>& p) {
    MultiPoly<K> r(2);
    for (const auto& [ij, v] : p.terms()) r.set({ij.first, ij.second}, v);
    return r;
}

template <class K>
BiPoly<K> multi_to_bipoly(const MultiPoly<K>& p) {
    BiPoly<K> r;
    for (const auto& [e, v] : p.terms()) r.set(e[0], e[1], v);
    return r;
}

template <class K>
MultiPoly<K> divide_difference(const MultiPoly<K>& num, int a, int b,
                               double rel_tol) {
    // Shift all exponents to be nonnegative first; (prod x_i) is coprime to
    // (x_a - x_b), so divisibility is unaffected.
    int vars = num.vars();
    std::vector<int> shift(vars, 0);
    for (const auto& [e, v] : num.terms())
        for (int i = 0; i < vars; ++i) shift[i] = std::max(shift[i], -e[i]);
    std::map<std::vector<int>, K> work;
    for (const auto& [e, v] : num.terms()) {
        std::vector<int> f = e;
        for (int i = 0; i < vars; ++i) f[i] += shift[i];
        work[f] = v;
    }
    const double scale = poly_scale(num);
    MultiPoly<K> quot(vars);
    // Eliminate terms by descending power of x_a.
    while (!work.empty()) {
        auto it = std::max_element(
            work.begin(), work.end(), [a](const auto& l, const auto& r) {
                return l.first[a] < r.first[a];
            });
        std::vector<int> e = it->first;
        K v = it->second;
        if (e[a] == 0) {
            // Remainder: must vanish (up to a relative threshold in float).
            double rem = 0.0;
            for (const auto& [f, w] : work)
                if (f[a] == 0) rem = std::max(rem, ScalarTraits<K>::abs(w));
            bool bad = ScalarTraits<K>::exact
                           ? rem > 0.0
                           : rem > rel_tol * std::max(scale, 1e-300);
            if (bad)
                throw NonVanishingNumeratorError(
                    "numerator is not divisible by the variable difference");
            break;
        }
        work.erase(it);
        std::vector<int> q = e;
        q[a] -= 1;
        // num -= v * x^q * (x_a - x_b)
        std::vector<int> e2 = q;
        e2[b] += 1;
        auto add = [&](const std::vector<int>& f, const K& w) {
            auto jt = work.find(f);
            K nv = (jt == work.end() ? K(0) : jt->second) + w;
            if (scalar_is_zero(nv))
                work.erase(f);
            else
                work[f] = nv;
        };
        add(e2, v);
        std::vector<int> qs = q;
        for (int i = 0; i < vars; ++i) qs[i] -= shift[i];
        quot.set(qs, quot.coeff(qs) + v);
    }
    return quot;
}

template <class K>
BiPoly<K> bop(const Laurent<K>& f, const Laurent<K>& h) {
    BiPoly<K> num = BiPoly<K>::outer(f, h) - BiPoly<K>::outer(h, f);
    MultiPoly<K> quot = divide_difference(bipoly_to_multi(num), 0, 1, 1e-12);
    BiPoly<K> r;
    for (const auto& [e, v] : quot.terms())
        r.set(e[0] + 1, e[1] + 1, v * (K(1) / K(2)));
    return r;
}

template <class K>
MultiPoly<K> bop_k(const std::vector<Laurent<K>>& fs) {
    const int k = static_cast<int>(fs.size());
    if (k < 1) throw MathDomainError("bop_k needs at least one function");
    MultiPoly<K> det(k);
    // Alternating sum over permutations of the evaluation matrix f_j(x_i).
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    do {
        int inv = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) inv += perm[i] > perm[j];
        K sign = (inv % 2 == 0) ? K(1) : K(-1);
        MultiPoly<K> prod(k);
        prod.set(std::vector<int>(k, 0), sign);
        for (int col = 0; col < k; ++col) {
            // factor f_col evaluated in variable perm[col]... rows are
            // variables, columns the functions: term f_col(x_{perm[col]}).
            MultiPoly<K> next(k);
            for (const auto& [e, v] : prod.terms())
                for (const auto& [p, w] : fs[col].terms()) {
                    std::vector<int> f = e;
                    f[perm[col]] += p;
                    next.set(f, next.coeff(f) + v * w);
                }
            prod = next;
        }
        det = det + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Divide by the Vandermonde prod_{i<j} (x_i - x_j).
    MultiPoly<K> quot = det;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) quot = divide_difference(quot, i, j, 1e-12);
    // Scale by prod x_i^{k-1} / 2^{k-1}.
    K denom = K(1);
    for (int i = 0; i < k - 1; ++i) denom = denom * K(2);
    MultiPoly<K> out(k);
    for (const auto& [e, v] : quot.terms()) {
        std::vector<int> f = e;
        for (int i = 0; i < k; ++i) f[i] += k - 1;
        out.set(f, v / denom);
    }
    return out;
}

template <class K>
Laurent<K> d_coeff(int k, const Laurent<K>& f) {
    if (k < 1) throw IndexOutOfRangeError("D_k needs k >= 1");
    Laurent<K> r;
    for (const auto& [m, v] : f.terms())
        if (m <= k - 1) r.set(m - k + 1, v * (K(1) / K(2)));
    return r;
}

template <class K>
PolarizationReport<K> polarization_check(const BiPoly<K>& F, const Laurent<K>& f) {
    if (!F.is_symmetric())
        throw NotSymmetricError("polarization check requires a symmetric input");
    PolarizationReport<K> rep;
    rep.diagonal_residual = F.diagonal() - f * K(2);
    rep.derivative_residual = F.dxi().diagonal() - f.derivative();
    rep.diagonal_ok = rep.diagonal_residual.is_zero();
    rep.derivative_ok = rep.derivative_residual.is_zero();
    return rep;
}

template <class K>
Laurent<K> mu_laurent(const Curve<K>& c) {
    validate_curve(c);
    Laurent<K> r = Laurent<K>::monomial(-1, K(4));
    for (int i = 1; i <= 2 * c.g; ++i) r.set(i, c.mu[i - 1]);
    return r;
}

template <class K>
BiPoly<K> mu_polarized(const Curve<K>& c) {
    validate_curve(c);
    BiPoly<K> r;
    r.set(-1, 0, K(4));
    r.set(0, -1, K(4));
    for (int i = 1; i <= c.g; ++i) {
        r.set(i, i, r.coeff(i, i) + K(2) * c.mu[2 * i - 1]);
    }
    for (int i = 0; i <= c.g - 1; ++i) {
        K m = c.mu[2 * i];  // mu_{2i+1}
        r.set(i + 1, i, r.coeff(i + 1, i) + m);
        r.set(i, i + 1, r.coeff(i, i + 1) + m);
    }
    return r;
}

template <class K>
BiPoly<K> basic_generating_function(const std::vector<K>& u_vals,
                                    const std::vector<K>& du_vals,
                                    const std::vector<K>& ddu_vals,
                                    const Curve<K>& curve, double float_tol) {
    validate_curve(curve);
    const int g = curve.g;
    if (static_cast<int>(u_vals.size()) != g ||
        static_cast<int>(du_vals.size()) != g ||
        static_cast<int>(ddu_vals.size()) != g)
        throw MathDomainError("generating values must have length g");
    Laurent<K> u, du, ddu;
    for (int i = 1; i <= g; ++i) {
        u.set(i, u_vals[i - 1]);
        du.set(i, du_vals[i - 1]);
        ddu.set(i, ddu_vals[i - 1]);
    }
    Laurent<K> two = Laurent<K>::constant(K(2));
    Laurent<K> s = two - u;  // 2 - u(xi)
    const K u1 = u_vals[0];

    using BP = BiPoly<K>;
    BP q = BP::outer(du, du);
    q = q + BP::outer(s, ddu) + BP::outer(ddu, s);
    Laurent<K> inv_xi = Laurent<K>::monomial(-1, K(1));
    BP weight = BP::outer(inv_xi, Laurent<K>::constant(K(1))) +
                BP::outer(Laurent<K>::constant(K(1)), inv_xi) +
                BP::outer(Laurent<K>::constant(K(2) * u1), Laurent<K>::constant(K(1)));
    q = q + BP::outer(s, s) * weight * K(2);

    BP num = mu_polarized(curve) * K(2) - q;
    MultiPoly<K> m = bipoly_to_multi(num);
    m = divide_difference(m, 0, 1, float_tol);
    m = divide_difference(m, 0, 1, float_tol);
    BP p;
    for (const auto& [e, v] : m.terms())
        p.set(e[0] + 2, e[1] + 2, v * (K(1) / K(4)));
    return p;
}

#define KDV_GENFUN_INSTANTIATE(K)                                              \
    template MultiPoly<K> bipoly_to_multi<K>(const BiPoly<K>&);                \
    template BiPoly<K> multi_to_bipoly<K>(const MultiPoly<K>&);                \
    template MultiPoly<K> divide_difference<K>(const MultiPoly<K>&, int, int,  \
                                               double);                       \
    template BiPoly<K> bop<K>(const Laurent<K>&, const Laurent<K>&);           \
    template MultiPoly<K> bop_k<K>(const std::vector<Laurent<K>>&);            \
    template Laurent<K> d_coeff<K>(int, const Laurent<K>&);                    \
    template PolarizationReport<K> polarization_check<K>(const BiPoly<K>&,     \
                                                         const Laurent<K>&);  \
    template Laurent<K> mu_laurent<K>(const Curve<K>&);                        \
    template BiPoly<K> mu_polarized<K>(const Curve<K>&);                       \
    template BiPoly<K> basic_generating_function<K>(                           \
        const std::vector<K>&, const std::vector<K>&, const std::vector<K>&,   \
        const Curve<K>&, double);

KDV_GENFUN_INSTANTIATE(Rational)
KDV_GENFUN_INSTANTIATE(double)

#undef KDV_GENFUN_INSTANTIATE

}  // namespace kdv
