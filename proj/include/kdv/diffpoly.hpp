#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdv/errors.hpp"
#include "kdv/rational.hpp"

namespace kdv {

/// Symbols of the coefficient ring: jet variables u{j} standing for the j-th
/// x-derivative of u, curve parameters mu{i} and equation constants a{i}.
enum class SymKind : std::uint8_t { UJet = 0, Mu = 1, A = 2 };

class Sym {
public:
    static Sym u(int j) { return Sym(SymKind::UJet, j); }
    static Sym mu(int i) { return Sym(SymKind::Mu, i); }
    static Sym a(int i) { return Sym(SymKind::A, i); }

    SymKind kind() const { return static_cast<SymKind>(code_ >> 24); }
    int index() const { return static_cast<int>(code_ & 0xffffff); }

    /// Grading: weight(u{j}) = j + 2, weight(mu{i}) = 2i + 2,
    /// weight(a{i}) = 2g - 2i. The last one needs the genus.
    long weight(int genus = -1) const;

    std::string name() const;

    bool operator==(const Sym& o) const { return code_ == o.code_; }
    bool operator!=(const Sym& o) const { return code_ != o.code_; }
    bool operator<(const Sym& o) const { return code_ < o.code_; }

private:
    Sym(SymKind k, int idx)
        : code_((static_cast<std::uint32_t>(k) << 24) |
                static_cast<std::uint32_t>(idx)) {
        if (idx < 0 || idx >= (1 << 24))
            throw IndexOutOfRangeError("symbol index out of range");
    }
    std::uint32_t code_;
};

/// Sorted (symbol, exponent) pairs with positive exponents; empty = 1.
using Monomial = std::vector<std::pair<Sym, int>>;

long monomial_weight(const Monomial& m, int genus = -1);
std::string monomial_str(const Monomial& m);

/// Element of the ring of differential polynomials: an exact-rational linear
/// combination of monomials in the jet variables and parameters.
class DiffPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    DiffPoly() = default;
    explicit DiffPoly(const Rational& c);
    explicit DiffPoly(long c) : DiffPoly(Rational(c)) {}
    static DiffPoly sym(Sym s, int exp = 1);
    static DiffPoly u(int j) { return sym(Sym::u(j)); }
    static DiffPoly mu(int i) { return sym(Sym::mu(i)); }
    static DiffPoly a(int i) { return sym(Sym::a(i)); }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    Rational coeff(const Monomial& m) const;

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly operator+(const DiffPoly& o) const;
    DiffPoly operator-(const DiffPoly& o) const;
    DiffPoly operator-() const;
    DiffPoly operator*(const DiffPoly& o) const;
    DiffPoly operator*(const Rational& c) const;
    bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    DiffPoly pow(int n) const;

    /// The unique derivation with u{j} -> u{j+1} and parameters -> 0.
    DiffPoly ddx() const;
    DiffPoly ddx(int n) const;

    /// Generic derivation determined by symbol images.
    DiffPoly derivation(const std::function<DiffPoly(Sym)>& image) const;

    /// Right inverse of ddx with vanishing integration constant.
    /// Throws NotExactError when the argument is not a total x-derivative.
    DiffPoly antiderivative() const;

    /// Common weight of all terms, or nullopt when inhomogeneous.
    std::optional<long> weight(int genus = -1) const;

    template <class K>
    K eval(const std::function<K(Sym)>& value) const {
        K acc = K(0);
        for (const auto& [mon, c] : terms_) {
            K term = ScalarTraits<K>::from_rational(c);
            for (const auto& [s, e] : mon) {
                K v = value(s);
                for (int i = 0; i < e; ++i) term = term * v;
            }
            acc = acc + term;
        }
        return acc;
    }

    /// Substitutes a polynomial for every occurrence of one symbol.
    DiffPoly subst(Sym s, const DiffPoly& replacement) const;

    /// Largest j with u{j} present, or -1 for jet-free polynomials.
    int max_u_derivative() const;
    bool has_symbol(Sym s) const;

    std::string str(int genus = -1) const;

private:
    void add_term(const Monomial& m, const Rational& c);
    TermMap terms_;
    friend DiffPoly mul_monomial(const DiffPoly&, const Monomial&,
                                 const Rational&);
};

inline DiffPoly operator*(const Rational& c, const DiffPoly& p) {
    return p * c;
}

/// All monomials in the jet variables alone with the given weight
/// (the empty monomial is excluded; weights below 2 give an empty list).
std::vector<Monomial> u_monomials_of_weight(long w);

}  // namespace kdv
