#include "kdv/jetspace.hpp"

#include <mutex>

#include "kdv/operators.hpp"
#include "kdv/spectral.hpp"

namespace kdv {

namespace {

// Sum over i+j = k of f(theta_i) * h(theta_j), indices clipped to [1, cap].
DiffPoly convolve(int k, int cap, const std::function<DiffPoly(int)>& f,
                  const std::function<DiffPoly(int)>& h) {
    DiffPoly out;
    for (int i = 1; i < k; ++i) {
        int j = k - i;
        if (i > cap || j > cap) continue;
        out += f(i) * h(j);
    }
    return out;
}

}  // namespace

const DiffPoly& theta_poly(int k) {
    if (k < 1) throw IndexOutOfRangeError("theta index must be >= 1");
    static std::vector<DiffPoly> cache{DiffPoly(), DiffPoly::u(0)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<int>(cache.size()) <= k) {
        const int m = static_cast<int>(cache.size()) - 1;  // building theta_{m+1}
        auto th = [&](int i) { return cache[i]; };
        auto dth = [&](int i) { return cache[i].ddx(); };
        auto ddth = [&](int i) { return cache[i].ddx(2); };
        DiffPoly rhs = -DiffPoly::mu(m) * Rational(4);
        rhs += convolve(m, m, dth, dth);
        rhs += cache[m].ddx(2) * Rational(4);
        rhs -= convolve(m, m, ddth, th) * Rational(2);
        rhs += convolve(m + 1, m, th, th) * Rational(4);
        rhs -= cache[1] * cache[m] * Rational(16);
        rhs += cache[1] * convolve(m, m, th, th) * Rational(4);
        cache.push_back(rhs * Rational(1, 16));
    }
    return cache[k];
}

DiffPoly theta(int k, int g) {
    if (g < 1) throw GenusMismatchError("genus must be >= 1");
    if (k < 1 || k > g + 1)
        throw IndexOutOfRangeError("theta(k, g) needs 1 <= k <= g+1");
    return theta_poly(k);
}

DiffPoly mu_sym_poly(int k, int g) {
    if (g < 1) throw GenusMismatchError("genus must be >= 1");
    if (k < g || k > 2 * g)
        throw IndexOutOfRangeError("mu_sym_poly(k, g) needs g <= k <= 2g");
    auto th = [&](int i) { return theta_poly(i); };
    auto dth = [&](int i) { return theta_poly(i).ddx(); };
    auto ddth = [&](int i) { return theta_poly(i).ddx(2); };
    DiffPoly rhs = convolve(k, g, dth, dth);
    if (k <= g) {
        rhs += theta_poly(k).ddx(2) * Rational(4);
        rhs -= theta_poly(1) * theta_poly(k) * Rational(16);
    }
    rhs -= convolve(k, g, ddth, th) * Rational(2);
    rhs += convolve(k + 1, g, th, th) * Rational(4);
    rhs += theta_poly(1) * convolve(k, g, th, th) * Rational(4);
    return rhs * Rational(1, 4);
}

JetD jet_to_double(const JetQ& j) {
    JetD out;
    out.g = j.g;
    out.a.reserve(j.a.size());
    out.c.reserve(j.c.size());
    for (const auto& v : j.a) out.a.push_back(rat_to_double(v));
    for (const auto& v : j.c) out.c.push_back(rat_to_double(v));
    return out;
}

template <class K>
K jet_eval(const DiffPoly& p, const Jet<K>& j) {
    validate_jet(j);
    std::function<K(Sym)> value = [&](Sym s) -> K {
        switch (s.kind()) {
            case SymKind::UJet: {
                int d = s.index();
                if (d >= static_cast<int>(j.c.size()))
                    throw MissingSymbolError(s.name());
                return j.c[d];
            }
            case SymKind::A: {
                int i = s.index();
                if (i >= static_cast<int>(j.a.size()))
                    throw MissingSymbolError(s.name());
                return j.a[i];
            }
            case SymKind::Mu: {
                int i = s.index();
                if (i < 1 || i > j.g - 1) throw MissingSymbolError(s.name());
                return mu_in_a(i, j.g).template eval<K>(value);
            }
        }
        throw MissingSymbolError(s.name());
    };
    return p.eval<K>(value);
}

template Rational jet_eval<Rational>(const DiffPoly&, const JetQ&);
template double jet_eval<double>(const DiffPoly&, const JetD&);

template <class K>
std::vector<K> mu_from_jet(const Jet<K>& j) {
    validate_jet(j);
    std::vector<K> mu(2 * j.g, K(0));
    std::vector<K> prefix = mu_from_a<K>(j.a, j.g);
    for (int k = 1; k <= j.g - 1; ++k) mu[k - 1] = prefix[k - 1];
    for (int k = j.g; k <= 2 * j.g; ++k)
        mu[k - 1] = jet_eval(mu_sym_poly(k, j.g), j);
    return mu;
}

template std::vector<Rational> mu_from_jet<Rational>(const JetQ&);
template std::vector<double> mu_from_jet<double>(const JetD&);

template <class K>
GeneratingValues<K> generating_values(const Jet<K>& j) {
    validate_jet(j);
    GeneratingValues<K> out;
    out.u.reserve(j.g);
    out.du.reserve(j.g);
    out.ddu.reserve(j.g);
    for (int k = 1; k <= j.g; ++k) {
        const DiffPoly& th = theta_poly(k);
        out.u.push_back(jet_eval(th, j));
        out.du.push_back(jet_eval(th.ddx(), j));
        out.ddu.push_back(jet_eval(th.ddx(2), j));
    }
    return out;
}

template GeneratingValues<Rational> generating_values<Rational>(const JetQ&);
template GeneratingValues<double> generating_values<double>(const JetD&);

namespace {

// Reduced flow right-hand sides per (g, k), with mu eliminated, cached.
const std::vector<DiffPoly>& flow_rhs(int g, int k) {
    static std::map<std::pair<int, int>, std::vector<DiffPoly>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(g, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<DiffPoly> rhs;
    rhs.reserve(2 * g + 1);
    const DiffPoly& th = theta_poly(k);
    for (int m = 0; m <= 2 * g; ++m)
        rhs.push_back(mu_to_a(reduce_stationary(th.ddx(m + 1), g), g));
    return cache.emplace(key, std::move(rhs)).first->second;
}

}  // namespace

std::vector<double> t_flow(int k, const JetD& j) {
    validate_jet(j);
    if (k < 1 || k > j.g)
        throw IndexOutOfRangeError("t_flow index outside 1..g");
    const auto& rhs = flow_rhs(j.g, k);
    std::vector<double> v(2 * j.g + 1);
    for (int m = 0; m <= 2 * j.g; ++m) v[m] = jet_eval(rhs[m], j);
    return v;
}

std::vector<double> x_flow(const JetD& j) { return t_flow(1, j); }

template <class K>
Jet<K> rescale(const Jet<K>& j, const K& kappa) {
    validate_jet(j);
    if (scalar_is_zero(kappa)) throw ZeroScaleError();
    Jet<K> out;
    out.g = j.g;
    out.a.reserve(j.a.size());
    out.c.reserve(j.c.size());
    auto pow_int = [&](int e) {
        K acc = K(1);
        for (int i = 0; i < e; ++i) acc = acc * kappa;
        return acc;
    };
    for (int i = 0; i < j.g - 1; ++i)
        out.a.push_back(j.a[i] * pow_int(2 * j.g - 2 * i));
    for (int m = 0; m <= 2 * j.g; ++m) out.c.push_back(j.c[m] * pow_int(m + 2));
    return out;
}

template JetQ rescale<Rational>(const JetQ&, const Rational&);
template JetD rescale<double>(const JetD&, const double&);

}  // namespace kdv
