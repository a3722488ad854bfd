#include "kdv/diffpoly.hpp"

#include <algorithm>
#include <sstream>

#include "kdv/linalg.hpp"

namespace kdv {

long Sym::weight(int genus) const {
    switch (kind()) {
        case SymKind::UJet:
            return index() + 2;
        case SymKind::Mu:
            return 2L * index() + 2;
        case SymKind::A:
            if (genus < 1)
                throw MathDomainError(
                    "weight of a-symbol requires an explicit genus");
            return 2L * genus - 2L * index();
    }
    return 0;
}

std::string Sym::name() const {
    switch (kind()) {
        case SymKind::UJet:
            return "u" + std::to_string(index());
        case SymKind::Mu:
            return "mu" + std::to_string(index());
        case SymKind::A:
            return "a" + std::to_string(index());
    }
    return "?";
}

long monomial_weight(const Monomial& m, int genus) {
    long w = 0;
    for (const auto& [s, e] : m) w += s.weight(genus) * e;
    return w;
}

std::string monomial_str(const Monomial& m) {
    if (m.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, e] : m) {
        if (!first) os << "*";
        first = false;
        os << s.name();
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

DiffPoly::DiffPoly(const Rational& c) {
    if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
}

DiffPoly DiffPoly::sym(Sym s, int exp) {
    DiffPoly p;
    if (exp < 0) throw MathDomainError("negative symbol exponent");
    if (exp == 0) return DiffPoly(Rational(1));
    p.terms_.emplace(Monomial{{s, exp}}, Rational(1));
    return p;
}

Rational DiffPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
    DiffPoly r = *this;
    r += o;
    return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const {
    DiffPoly r = *this;
    r -= o;
    return r;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

namespace {
Monomial merge_monomials(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            out.push_back(a[i++]);
        else if (b[j].first < a[i].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}
}  // namespace

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
    DiffPoly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            r.add_term(merge_monomials(ma, mb), ca * cb);
    return r;
}

DiffPoly DiffPoly::operator*(const Rational& c) const {
    DiffPoly r;
    if (sgn(c) == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

DiffPoly DiffPoly::pow(int n) const {
    if (n < 0) throw MathDomainError("negative power of a polynomial");
    DiffPoly acc(Rational(1));
    for (int i = 0; i < n; ++i) acc = acc * (*this);
    return acc;
}

DiffPoly DiffPoly::derivation(const std::function<DiffPoly(Sym)>& image) const {
    DiffPoly out;
    for (const auto& [mon, c] : terms_) {
        for (std::size_t i = 0; i < mon.size(); ++i) {
            DiffPoly img = image(mon[i].first);
            if (img.is_zero()) continue;
            Monomial rest;
            rest.reserve(mon.size());
            for (std::size_t j = 0; j < mon.size(); ++j) {
                int e = mon[j].second - (j == i ? 1 : 0);
                if (e > 0) rest.emplace_back(mon[j].first, e);
            }
            DiffPoly partial;
            partial.terms_.emplace(rest, c * mon[i].second);
            out += partial * img;
        }
    }
    return out;
}

DiffPoly DiffPoly::ddx() const {
    return derivation([](Sym s) {
        if (s.kind() == SymKind::UJet) return DiffPoly::u(s.index() + 1);
        return DiffPoly();
    });
}

DiffPoly DiffPoly::ddx(int n) const {
    DiffPoly p = *this;
    for (int i = 0; i < n; ++i) p = p.ddx();
    return p;
}

std::optional<long> DiffPoly::weight(int genus) const {
    std::optional<long> w;
    for (const auto& [m, c] : terms_) {
        long mw = monomial_weight(m, genus);
        if (!w)
            w = mw;
        else if (*w != mw)
            return std::nullopt;
    }
    return w;
}

DiffPoly DiffPoly::subst(Sym s, const DiffPoly& replacement) const {
    DiffPoly out;
    for (const auto& [mon, c] : terms_) {
        DiffPoly term(c);
        for (const auto& [sym, e] : mon) {
            if (sym == s)
                term = term * replacement.pow(e);
            else
                term = term * DiffPoly::sym(sym, e);
        }
        out += term;
    }
    return out;
}

int DiffPoly::max_u_derivative() const {
    int best = -1;
    for (const auto& [m, c] : terms_)
        for (const auto& [s, e] : m)
            if (s.kind() == SymKind::UJet) best = std::max(best, s.index());
    return best;
}

bool DiffPoly::has_symbol(Sym s) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [sym, e] : m)
            if (sym == s) return true;
    return false;
}

std::vector<Monomial> u_monomials_of_weight(long w) {
    std::vector<Monomial> out;
    if (w < 2) return out;
    // Multisets of derivative orders j (weight j+2 each), nonincreasing.
    std::vector<int> stack;
    std::function<void(long, int)> rec = [&](long rem, int max_j) {
        if (rem == 0) {
            Monomial m;
            for (int j : stack) {
                if (!m.empty() && m.back().first == Sym::u(j))
                    m.back().second++;
                else
                    m.emplace_back(Sym::u(j), 1);
            }
            std::sort(m.begin(), m.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            out.push_back(m);
            return;
        }
        for (int j = std::min<long>(max_j, rem - 2); j >= 0; --j) {
            stack.push_back(j);
            rec(rem - (j + 2), j);
            stack.pop_back();
        }
    };
    rec(w, static_cast<int>(w - 2));
    return out;
}

DiffPoly DiffPoly::antiderivative() const {
    if (is_zero()) return DiffPoly();
    // Parameters are x-constants, so integrate each parameter-cofactor slice
    // independently; within a slice split into homogeneous weight parts and
    // solve ddx(q) = p on the graded monomial basis.
    std::map<Monomial, DiffPoly> slices;  // parameter part -> jet part
    for (const auto& [mon, c] : terms_) {
        Monomial param, jet;
        for (const auto& [s, e] : mon)
            (s.kind() == SymKind::UJet ? jet : param).emplace_back(s, e);
        DiffPoly piece;
        piece.terms_.emplace(jet, c);
        slices[param] += piece;
    }
    DiffPoly result;
    for (const auto& [param, jet_poly] : slices) {
        std::map<long, DiffPoly> by_weight;
        for (const auto& [mon, c] : jet_poly.terms()) {
            if (mon.empty())
                throw NotExactError("constant term " + monomial_str(param));
            DiffPoly piece;
            piece.terms_.emplace(mon, c);
            by_weight[monomial_weight(mon)] += piece;
        }
        for (const auto& [w, part] : by_weight) {
            auto basis = u_monomials_of_weight(w - 1);
            if (basis.empty()) throw NotExactError(part.str());
            // Rows indexed by the union of monomials of ddx(basis) and part.
            std::vector<DiffPoly> images;
            images.reserve(basis.size());
            std::map<Monomial, std::size_t> row_of;
            for (const auto& b : basis) {
                DiffPoly bp;
                bp.terms_.emplace(b, Rational(1));
                images.push_back(bp.ddx());
                for (const auto& [m, c] : images.back().terms())
                    row_of.emplace(m, row_of.size());
            }
            for (const auto& [m, c] : part.terms()) row_of.emplace(m, row_of.size());
            std::vector<std::vector<Rational>> A(
                row_of.size(), std::vector<Rational>(basis.size(), Rational(0)));
            std::vector<Rational> rhs(row_of.size(), Rational(0));
            for (std::size_t col = 0; col < basis.size(); ++col)
                for (const auto& [m, c] : images[col].terms())
                    A[row_of[m]][col] = c;
            for (const auto& [m, c] : part.terms()) rhs[row_of[m]] = c;
            auto sol = solve_linear_system<Rational>(A, rhs);
            if (!sol.consistent) throw NotExactError(part.str());
            DiffPoly prim;
            for (std::size_t col = 0; col < basis.size(); ++col)
                prim.add_term(basis[col], sol.solution[col]);
            DiffPoly param_poly;
            param_poly.terms_.emplace(param, Rational(1));
            result += prim * param_poly;
        }
    }
    return result;
}

std::string DiffPoly::str(int genus) const {
    if (terms_.empty()) return "0";
    // Graded lexicographic rendering: higher weight first, then by the most
    // significant symbol (higher derivatives before lower, u before mu/a).
    std::vector<const TermMap::value_type*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    auto mon_key = [genus](const Monomial& m) {
        long w;
        try {
            w = monomial_weight(m, genus);
        } catch (const MathDomainError&) {
            w = monomial_weight(m, 0);
        }
        return w;
    };
    // Significance rank: high jet derivatives first, then mu, then a.
    auto rank = [](Sym s) {
        long base = s.kind() == SymKind::UJet ? 0
                    : s.kind() == SymKind::Mu ? 1'000'000
                                              : 2'000'000;
        return base + (500'000 - s.index());
    };
    auto mon_less_significant = [&](const Monomial& a, const Monomial& b) {
        std::map<long, int> ea, eb;
        for (const auto& [s, e] : a) ea[rank(s)] = e;
        for (const auto& [s, e] : b) eb[rank(s)] = e;
        auto ia = ea.begin();
        auto ib = eb.begin();
        while (ia != ea.end() && ib != eb.end()) {
            if (ia->first != ib->first) return ia->first > ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
            ++ia;
            ++ib;
        }
        return ia == ea.end() && ib != eb.end();
    };
    std::sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
        long wa = mon_key(a->first), wb = mon_key(b->first);
        if (wa != wb) return wa > wb;
        return mon_less_significant(b->first, a->first);
    });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        Rational c = t->second;
        if (first) {
            if (sgn(c) < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
            if (sgn(c) < 0) c = -c;
        }
        first = false;
        bool unit = (c == 1);
        if (!unit || t->first.empty()) os << rat_to_string(c);
        if (!t->first.empty()) {
            if (!unit) os << "*";
            os << monomial_str(t->first);
        }
    }
    return os.str();
}

}  // namespace kdv
