#include "kdv/operators.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "kdv/jetspace.hpp"
#include "kdv/linalg.hpp"

namespace kdv {

namespace {

Rational binom(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= rat(n - i, i + 1);
    return r;
}

int total(const DiffOperator::Index& idx) {
    int t = 0;
    for (int v : idx) t += v;
    return t;
}

}  // namespace

DiffPoly partial_t(const DiffPoly& p, int k) {
    if (k < 1) throw IndexOutOfRangeError("flow index must be >= 1");
    if (k == 1) return p.ddx();
    const DiffPoly& th = theta_poly(k);
    return p.derivation([&](Sym s) {
        if (s.kind() == SymKind::UJet) return th.ddx(s.index() + 1);
        return DiffPoly();
    });
}

DiffOperator::DiffOperator(int genus) : genus_(genus) {
    if (genus < 1) throw GenusMismatchError("operator genus must be >= 1");
}

DiffOperator DiffOperator::multiplication(const DiffPoly& p, int genus) {
    DiffOperator op(genus);
    op.add_term(Index(genus, 0), p);
    return op;
}

DiffOperator DiffOperator::partial(int k, int genus, int power) {
    if (k < 1 || k > genus)
        throw IndexOutOfRangeError("partial index outside 1..genus");
    DiffOperator op(genus);
    Index idx(genus, 0);
    idx[k - 1] = power;
    op.add_term(idx, DiffPoly(1L));
    return op;
}

DiffOperator DiffOperator::identity(int genus) {
    return multiplication(DiffPoly(1L), genus);
}

DiffPoly DiffOperator::coeff(const Index& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? DiffPoly() : it->second;
}

int DiffOperator::order() const {
    int best = 0;
    for (const auto& [idx, p] : terms_) best = std::max(best, total(idx));
    return best;
}

void DiffOperator::add_term(const Index& idx, const DiffPoly& p) {
    if (static_cast<int>(idx.size()) != genus_)
        throw GenusMismatchError("index length does not match operator genus");
    if (p.is_zero()) return;
    auto [it, fresh] = terms_.emplace(idx, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
    if (genus_ != o.genus_) throw GenusMismatchError("operator genus mismatch");
    for (const auto& [idx, p] : o.terms_) add_term(idx, p);
    return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
    if (genus_ != o.genus_) throw GenusMismatchError("operator genus mismatch");
    for (const auto& [idx, p] : o.terms_) add_term(idx, -p);
    return *this;
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const {
    DiffOperator r = *this;
    r += o;
    return r;
}

DiffOperator DiffOperator::operator-(const DiffOperator& o) const {
    DiffOperator r = *this;
    r -= o;
    return r;
}

DiffOperator DiffOperator::operator-() const {
    DiffOperator r(genus_);
    for (const auto& [idx, p] : terms_) r.terms_.emplace(idx, -p);
    return r;
}

DiffOperator DiffOperator::operator*(const Rational& c) const {
    DiffOperator r(genus_);
    if (sgn(c) == 0) return r;
    for (const auto& [idx, p] : terms_) r.terms_.emplace(idx, p * c);
    return r;
}

bool DiffOperator::operator==(const DiffOperator& o) const {
    return genus_ == o.genus_ && terms_ == o.terms_;
}

DiffOperator DiffOperator::compose(const DiffOperator& o) const {
    if (genus_ != o.genus_) throw GenusMismatchError("operator genus mismatch");
    DiffOperator out(genus_);
    Index max_alpha(genus_, 0);
    for (const auto& [alpha, p] : terms_)
        for (int i = 0; i < genus_; ++i)
            max_alpha[i] = std::max(max_alpha[i], alpha[i]);

    for (const auto& [beta, q] : o.terms_) {
        // All coefficient derivatives of q we may need, filled on demand
        // starting from the zero index.
        std::map<Index, DiffPoly> derived;
        derived.emplace(Index(genus_, 0), q);
        std::function<const DiffPoly&(const Index&)> deriv =
            [&](const Index& delta) -> const DiffPoly& {
            auto it = derived.find(delta);
            if (it != derived.end()) return it->second;
            for (int i = 0; i < genus_; ++i) {
                if (delta[i] > 0) {
                    Index prev = delta;
                    prev[i]--;
                    DiffPoly d = partial_t(deriv(prev), i + 1);
                    return derived.emplace(delta, std::move(d)).first->second;
                }
            }
            return derived.at(delta);
        };
        for (const auto& [alpha, p] : terms_) {
            // gamma runs over all componentwise-smaller indices.
            Index gamma(genus_, 0);
            while (true) {
                Rational factor(1);
                for (int i = 0; i < genus_; ++i)
                    factor *= binom(alpha[i], gamma[i]);
                Index delta(genus_, 0);
                for (int i = 0; i < genus_; ++i) delta[i] = alpha[i] - gamma[i];
                const DiffPoly& dq = deriv(delta);
                if (!dq.is_zero()) {
                    Index idx(genus_, 0);
                    for (int i = 0; i < genus_; ++i) idx[i] = gamma[i] + beta[i];
                    out.add_term(idx, (p * dq) * factor);
                }
                int pos = 0;
                while (pos < genus_ && gamma[pos] == alpha[pos]) {
                    gamma[pos] = 0;
                    ++pos;
                }
                if (pos == genus_) break;
                gamma[pos]++;
            }
        }
    }
    return out;
}

DiffOperator DiffOperator::adjoint() const {
    DiffOperator out(genus_);
    for (const auto& [alpha, p] : terms_) {
        DiffOperator dalpha(genus_);
        dalpha.add_term(alpha, DiffPoly(1L));
        DiffOperator moved = dalpha.compose(multiplication(p, genus_));
        int sign = total(alpha) % 2 == 0 ? 1 : -1;
        out += moved * Rational(sign);
    }
    return out;
}

bool DiffOperator::is_multiplication() const {
    for (const auto& [idx, p] : terms_)
        if (total(idx) != 0) return false;
    return true;
}

DiffOperator DiffOperator::extend_genus(int genus) const {
    if (genus < genus_) throw GenusMismatchError("cannot shrink operator genus");
    DiffOperator out(genus);
    for (const auto& [idx, p] : terms_) {
        Index wide(genus, 0);
        std::copy(idx.begin(), idx.end(), wide.begin());
        out.add_term(wide, p);
    }
    return out;
}

DiffOperator DiffOperator::map_coeffs(
    const std::function<DiffPoly(const DiffPoly&)>& f) const {
    DiffOperator out(genus_);
    for (const auto& [idx, p] : terms_) out.add_term(idx, f(p));
    return out;
}

std::optional<long> DiffOperator::hom_weight(int genus_for_a) const {
    std::optional<long> w;
    for (const auto& [idx, p] : terms_) {
        auto pw = p.weight(genus_for_a);
        if (!pw) return std::nullopt;
        long iw = 0;
        for (int i = 0; i < genus_; ++i) iw += static_cast<long>(idx[i]) * (2 * (i + 1) - 1);
        long tw = *pw + iw;
        if (!w)
            w = tw;
        else if (*w != tw)
            return std::nullopt;
    }
    return w;
}

std::string DiffOperator::str(int genus_for_a) const {
    if (terms_.empty()) return "0";
    std::vector<const TermMap::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        int ta = total(a->first), tb = total(b->first);
        if (ta != tb) return ta > tb;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t->second.str(genus_for_a) << ")";
        for (int i = 0; i < genus_; ++i) {
            if (t->first[i] == 0) continue;
            os << "*" << (i == 0 ? "dx" : "d" + std::to_string(i + 1));
            if (t->first[i] > 1) os << "^" << t->first[i];
        }
    }
    return os.str();
}

DiffOperator op_commutator(const DiffOperator& a, const DiffOperator& b) {
    return a.compose(b) - b.compose(a);
}

const DiffPoly& lenard_r(int k) {
    static std::vector<DiffPoly> chain;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (chain.empty()) chain.push_back(DiffPoly::u(1));
    while (static_cast<int>(chain.size()) <= k)
        chain.push_back(lenard_step(chain.back()));
    return chain[k];
}

DiffPoly lenard_step(const DiffPoly& f) {
    DiffPoly primitive = f.antiderivative();
    return f.ddx(2) * Rational(1, 4) - DiffPoly::u(1) * primitive * Rational(1, 2) -
           DiffPoly::u(0) * f;
}

DiffOperator schroedinger_l(int genus) {
    DiffOperator l = DiffOperator::partial(1, genus, 2);
    l += DiffOperator::multiplication(-DiffPoly::u(0), genus);
    return l;
}

DiffOperator build_a(int k) {
    if (k < 0) throw IndexOutOfRangeError("A_k needs k >= 0");
    if (k == 0) return DiffOperator::partial(1, 1, 1);

    const int order = 2 * k + 1;
    const DiffOperator l = schroedinger_l(1);
    DiffOperator lead = DiffOperator::partial(1, 1, order);

    // Unknown coefficients: one per graded jet monomial per derivative slot.
    std::vector<std::pair<int, Monomial>> unknowns;
    for (int i = 0; i < order; ++i)
        for (const auto& m : u_monomials_of_weight(order - i))
            unknowns.emplace_back(i, m);

    // Linear constraints: A + A* = 0 and [L, A] free of derivatives.
    std::map<std::pair<int, Monomial>, std::size_t> row_of;
    auto rows_from = [&row_of](const DiffOperator& op, bool skip_order_zero) {
        for (const auto& [idx, p] : op.terms()) {
            if (skip_order_zero && idx[0] == 0) continue;
            for (const auto& [mon, c] : p.terms())
                row_of.emplace(std::make_pair(idx[0], mon), row_of.size());
        }
    };

    std::vector<std::pair<DiffOperator, DiffOperator>> images;  // (sym, comm)
    images.reserve(unknowns.size());
    for (const auto& [i, mon] : unknowns) {
        DiffPoly coeff;
        coeff += DiffPoly(1L);
        for (const auto& [s, e] : mon) coeff = coeff * DiffPoly::sym(s, e);
        DiffOperator unit(1);
        DiffOperator::Index idx{i};
        unit.add_term(idx, coeff);
        DiffOperator sym = unit + unit.adjoint();
        DiffOperator comm = op_commutator(l, unit);
        rows_from(sym, false);
        rows_from(comm, true);
        images.emplace_back(std::move(sym), std::move(comm));
    }
    DiffOperator lead_sym = lead + lead.adjoint();
    DiffOperator lead_comm = op_commutator(l, lead);
    rows_from(lead_sym, false);
    rows_from(lead_comm, true);

    std::vector<std::vector<Rational>> A(
        row_of.size(), std::vector<Rational>(unknowns.size(), Rational(0)));
    std::vector<Rational> rhs(row_of.size(), Rational(0));
    auto scatter = [&](const DiffOperator& op, bool skip_order_zero,
                       std::optional<std::size_t> col) {
        for (const auto& [idx, p] : op.terms()) {
            if (skip_order_zero && idx[0] == 0) continue;
            for (const auto& [mon, c] : p.terms()) {
                std::size_t r = row_of.at(std::make_pair(idx[0], mon));
                if (col)
                    A[r][*col] = c;
                else
                    rhs[r] -= c;
            }
        }
    };
    for (std::size_t n = 0; n < unknowns.size(); ++n) {
        scatter(images[n].first, false, n);
        scatter(images[n].second, true, n);
    }
    scatter(lead_sym, false, std::nullopt);
    scatter(lead_comm, true, std::nullopt);

    auto sol = solve_linear_system<Rational>(A, rhs);
    if (!sol.consistent || !sol.unique)
        throw ConstructionFailedError("A_" + std::to_string(k) +
                                      ": ansatz system not uniquely solvable");
    DiffOperator result = lead;
    for (std::size_t n = 0; n < unknowns.size(); ++n) {
        if (sgn(sol.solution[n]) == 0) continue;
        DiffPoly coeff;
        coeff += DiffPoly(sol.solution[n]);
        for (const auto& [s, e] : unknowns[n].second)
            coeff = coeff * DiffPoly::sym(s, e);
        DiffOperator::Index idx{unknowns[n].first};
        result.add_term(idx, coeff);
    }
    DiffOperator check = op_commutator(l, result) -
                         DiffOperator::multiplication(lenard_r(k), 1);
    if (!check.is_zero())
        throw ConstructionFailedError("A_" + std::to_string(k) +
                                      ": commutator does not match Lenard chain");
    return result;
}

DiffOperator build_u(int i, int g) {
    if (i < 1 || i > g) throw IndexOutOfRangeError("U_i needs 1 <= i <= g");
    const DiffPoly uk = theta_poly(i);
    const DiffPoly duk = uk.ddx();
    DiffOperator op(g);
    // dx^2 d_i - u d_i - (1/2) u_i dx - (3/4) u_i'
    DiffOperator::Index idx(g, 0);
    idx[0] = 2;
    idx[i - 1] += 1;
    op.add_term(idx, DiffPoly(1L));
    DiffOperator::Index di(g, 0);
    di[i - 1] = 1;
    op.add_term(di, -DiffPoly::u(0));
    DiffOperator::Index dx(g, 0);
    dx[0] = 1;
    op.add_term(dx, uk * Rational(-1, 2));
    op.add_term(DiffOperator::Index(g, 0), duk * Rational(-3, 4));
    if (i < g) op -= DiffOperator::partial(i + 1, g, 1);
    return op;
}

DiffOperator u_composite(int g) {
    const DiffOperator l = schroedinger_l(g);
    DiffOperator acc(g);
    for (int i = 1; i <= g; ++i) {
        DiffOperator term = build_u(i, g);
        for (int p = 0; p < g - i; ++p) term = term.compose(l);
        acc += term;
    }
    return acc;
}

namespace {

// u^(2g+1) rewritten through lower derivatives by the stationary equation.
const DiffPoly& stationary_top(int g) {
    static std::map<int, DiffPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
    DiffPoly eq = lenard_r(g);
    for (int k = 0; k <= g - 2; ++k) eq += DiffPoly::a(k) * lenard_r(k);
    // Leading coefficient of u^(2g+1) in r_g is 4^{-g}.
    DiffPoly top = DiffPoly::u(2 * g + 1) - eq * rat_pow(Rational(4), g);
    if (top.max_u_derivative() > 2 * g)
        throw ConstructionFailedError("stationary reduction ill-formed");
    return cache.emplace(g, std::move(top)).first->second;
}

}  // namespace

DiffPoly reduce_stationary(const DiffPoly& p, int g) {
    if (g < 1) throw GenusMismatchError("genus must be >= 1");
    DiffPoly out = p;
    const DiffPoly& base = stationary_top(g);
    int j;
    while ((j = out.max_u_derivative()) > 2 * g)
        out = out.subst(Sym::u(j), base.ddx(j - (2 * g + 1)));
    return out;
}

DiffOperator reduce_stationary_op(const DiffOperator& a, int g) {
    return a.map_coeffs([g](const DiffPoly& p) { return reduce_stationary(p, g); });
}

DiffPoly mu_in_a(int k, int g) {
    if (k < 1 || k > g - 1)
        throw IndexOutOfRangeError("mu_in_a needs 1 <= k <= g-1");
    DiffPoly out = DiffPoly::a(g - k - 1) * Rational(8);
    for (int i = 1; i <= k - 2; ++i)
        out += DiffPoly::a(g - i - 1) * DiffPoly::a(g - k + i) * Rational(4);
    return out;
}

DiffPoly mu_to_a(const DiffPoly& p, int g) {
    DiffPoly out = p;
    for (int k = 1; k <= g - 1; ++k)
        if (out.has_symbol(Sym::mu(k))) out = out.subst(Sym::mu(k), mu_in_a(k, g));
    return out;
}

DiffOperator check_relation(int g, const Rational& mu_2g_shift) {
    const DiffOperator l = schroedinger_l(g);
    DiffOperator u = u_composite(g);
    DiffOperator lhs = u.compose(u) * Rational(4);

    DiffOperator rhs(g);
    DiffOperator lpow = DiffOperator::identity(g);
    std::vector<DiffOperator> lpowers{lpow};
    for (int p = 1; p <= 2 * g + 1; ++p) {
        lpow = lpow.compose(l);
        lpowers.push_back(lpow);
    }
    rhs += lpowers[2 * g + 1] * Rational(4);
    for (int k = 1; k <= 2 * g; ++k) {
        DiffPoly mu_k = k < g ? mu_in_a(k, g) : mu_to_a(mu_sym_poly(k, g), g);
        if (k == 2 * g) mu_k += DiffPoly(mu_2g_shift);
        rhs += DiffOperator::multiplication(mu_k, g).compose(lpowers[2 * g - k]);
    }

    DiffOperator residual = (lhs - rhs).map_coeffs(
        [g](const DiffPoly& p) { return reduce_stationary(mu_to_a(p, g), g); });
    return residual;
}

}  // namespace kdv
