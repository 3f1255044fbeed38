#pragma once

// Univariate polynomials over Z, Q, Q(sqrt d) and F_p.
//
// Coefficients are stored in ascending degree order and kept trimmed, so the
// zero polynomial has an empty coefficient vector and degree -1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "m12/exactnum.hpp"

namespace m12 {

template <class R>
class Poly {
  public:
    std::vector<R> c;

    Poly() = default;
    explicit Poly(std::vector<R> coeffs) : c(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<R> coeffs) : c(coeffs) { trim(); }

    static Poly constant(R const& a) { return Poly(std::vector<R>{a}); }
    static Poly monomial(R const& a, int k)
    {
        std::vector<R> v(k + 1, R(0L));
        v[k] = a;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    R lc() const { return c.empty() ? R(0L) : c.back(); }
    R coeff(int k) const { return k >= 0 && k < static_cast<int>(c.size()) ? c[k] : R(0L); }

    void trim()
    {
        while (!c.empty() && c.back() == R(0L))
            c.pop_back();
    }

    Poly& operator+=(Poly const& o)
    {
        if (o.c.size() > c.size())
            c.resize(o.c.size(), R(0L));
        for (std::size_t i = 0; i < o.c.size(); ++i)
            c[i] += o.c[i];
        trim();
        return *this;
    }
    Poly& operator-=(Poly const& o)
    {
        if (o.c.size() > c.size())
            c.resize(o.c.size(), R(0L));
        for (std::size_t i = 0; i < o.c.size(); ++i)
            c[i] -= o.c[i];
        trim();
        return *this;
    }
    Poly operator-() const
    {
        Poly r = *this;
        for (auto& a : r.c)
            a = -a;
        return r;
    }
    friend Poly operator+(Poly a, Poly const& b) { return a += b; }
    friend Poly operator-(Poly a, Poly const& b) { return a -= b; }
    friend Poly operator*(Poly const& a, Poly const& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<R> r(a.c.size() + b.c.size() - 1, R(0L));
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == R(0L))
                continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r[i + j] += a.c[i] * b.c[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator*=(Poly const& o) { return *this = *this * o; }
    friend Poly operator*(R const& s, Poly p)
    {
        for (auto& a : p.c)
            a *= s;
        p.trim();
        return p;
    }
    friend bool operator==(Poly const& a, Poly const& b) { return a.c == b.c; }
    friend bool operator!=(Poly const& a, Poly const& b) { return !(a == b); }

    R operator()(R const& x) const
    {
        R acc(0L);
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const
    {
        if (c.size() <= 1)
            return {};
        std::vector<R> r(c.size() - 1, R(0L));
        for (std::size_t i = 1; i < c.size(); ++i)
            r[i - 1] = c[i] * R(static_cast<long>(i));
        return Poly(std::move(r));
    }

    Poly pow(unsigned e) const
    {
        Poly r = constant(R(1L)), b = *this;
        while (e) {
            if (e & 1)
                r *= b;
            e >>= 1;
            if (e)
                b *= b;
        }
        return r;
    }
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;
using QuadPoly = Poly<QuadElt>;

/// Factorization pattern: degrees of irreducible factors, sorted descending.
using Partition = std::vector<int>;

std::string partition_to_string(Partition const& p);
/// Accepts "4^2 1^4", "(10)2", "8 4", "11^2 1^2" and similar.
Partition parse_partition(std::string const& text);
Partition normalize_partition(Partition p);

// ---- Integer polynomials ----

Int content(IntPoly const& f);
/// Content 1 and positive leading coefficient.
IntPoly primitive_part(IntPoly const& f);
RatPoly to_rat(IntPoly const& f);
/// Clears denominators; the result is primitive with positive leading coefficient.
IntPoly primitive_integral(RatPoly const& f);
IntPoly primitive_integral(QuadPoly const& f);

/// lc(g)^(deg f - deg g + 1) f = q g + r.
void pseudo_divide(IntPoly const& f, IntPoly const& g, IntPoly& q, IntPoly& r);
/// Returns f / g when g divides f in Z[x].
std::optional<IntPoly> divide_exact(IntPoly const& f, IntPoly const& g);
IntPoly gcd(IntPoly const& f, IntPoly const& g);
IntPoly squarefree_part(IntPoly const& f);

Int resultant(IntPoly const& f, IntPoly const& g);
/// (-1)^(n(n-1)/2) res(f, f') / lc(f). Zero exactly when f has a repeated root.
Int discriminant(IntPoly const& f);
/// Discriminant of a rational polynomial taken as printed, without clearing denominators.
Rat discriminant(RatPoly const& f);

/// Resultant and discriminant over a field (Rat or QuadElt) by the Euclidean
/// remainder sequence; used for polynomials with quadratic irrational coefficients.
template <class F>
F field_resultant(Poly<F> const& f, Poly<F> const& g);
template <class F>
F field_discriminant(Poly<F> const& f);
/// Remainder of f modulo g over a field.
template <class F>
Poly<F> field_rem(Poly<F> const& f, Poly<F> const& g);

IntPoly substitute_square(IntPoly const& f);
QuadPoly substitute_square(QuadPoly const& f);
/// a^(n-1) f(x / a) for leading coefficient a: monic, integral, same stem field.
IntPoly monicize(IntPoly const& f);
/// x^n f(1/x).
IntPoly reciprocal(IntPoly const& f);
/// f(x + k).
IntPoly taylor_shift(IntPoly const& f, Int const& k);

QuadPoly conj(QuadPoly const& f);
/// f * conj(f) brought to primitive integral form.
IntPoly norm_rationalize(QuadPoly const& f);
QuadPoly to_quad(IntPoly const& f);

// ---- Text formats ----

/// "deg n: c0 c1 ... cn".
IntPoly parse_deg_format(std::string const& text);
std::string to_deg_format(IntPoly const& f);
/// Expanded sum of monomials in one variable, e.g. "x^12 - 12*x^10 + 3".
IntPoly parse_symbolic(std::string const& text, char var = 'x');
std::string to_symbolic(IntPoly const& f, char var = 'x');
/// Either of the two formats.
IntPoly parse_poly(std::string const& text);

// ---- Polynomials over F_p, p < 2^32 ----

class FpPoly {
  public:
    std::uint64_t p = 2;
    std::vector<std::uint64_t> c;

    FpPoly() = default;
    FpPoly(std::uint64_t prime, std::vector<std::uint64_t> coeffs);
    static FpPoly reduce(IntPoly const& f, std::uint64_t prime);
    static FpPoly x(std::uint64_t prime);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    std::uint64_t lc() const { return c.empty() ? 0 : c.back(); }
    void trim();
    FpPoly monic() const;
    FpPoly derivative() const;
    friend bool operator==(FpPoly const& a, FpPoly const& b) { return a.p == b.p && a.c == b.c; }
};

FpPoly operator+(FpPoly const& a, FpPoly const& b);
FpPoly operator-(FpPoly const& a, FpPoly const& b);
FpPoly operator*(FpPoly const& a, FpPoly const& b);
void divrem(FpPoly const& a, FpPoly const& b, FpPoly& q, FpPoly& r);
FpPoly operator%(FpPoly const& a, FpPoly const& b);
FpPoly operator/(FpPoly const& a, FpPoly const& b);
FpPoly gcd(FpPoly a, FpPoly b);
/// a^e mod m.
FpPoly powmod(FpPoly const& a, Int const& e, FpPoly const& m);

/// Degree partition of f mod p; nullopt when p | lc(f) or f mod p is not squarefree.
std::optional<Partition> ddf_partition(IntPoly const& f, std::uint64_t p);
/// Monic irreducible factors (distinct-degree then equal-degree splitting).
/// Throws contract_error under the same conditions where ddf_partition returns nullopt.
std::vector<FpPoly> factor_mod_p(IntPoly const& f, std::uint64_t p);

// ---- Factorization over Q ----

struct RationalFactorization {
    Int content;
    std::vector<IntPoly> factors; ///< primitive, positive leading coefficient, sorted by degree
};

/// Zassenhaus: modular factorization, Hensel lifting, subset recombination.
/// Input must be squarefree (use squarefree_part first). Throws contract_error
/// when recombination would need more than 2^20 subset trials.
RationalFactorization factor_rational(IntPoly const& f);
bool is_irreducible(IntPoly const& f);

/// Landau-Mignotte style bound on coefficients of any factor of f.
Int factor_coefficient_bound(IntPoly const& f);

/// One step of multifactor Hensel lifting: given f = lc * prod(g) mod p with the
/// g monic and pairwise coprime mod p, returns monic lifts mod p^k.
std::vector<IntPoly> hensel_lift(IntPoly const& f, std::vector<FpPoly> const& factors, std::uint64_t p, unsigned k);

} // namespace m12
