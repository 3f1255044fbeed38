#pragma once

// Exact arithmetic layer: GMP integers and rationals, p-adic valuations,
// S-unit decomposition, integer factorization and the quadratic rings
// Q(sqrt d) that carry the irrational cover coefficients.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace m12 {

using Int = mpz_class;
using Rat = mpq_class;

/// Base of all library errors. The CLI maps the subclasses to exit codes.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (exit code 2).
class input_error : public error {
  public:
    using error::error;
};

/// A mathematical contract was violated, e.g. a non-separable specialization (exit code 3).
class contract_error : public error {
  public:
    using error::error;
};

/// A result depends on a factorization that ran out of budget (exit code 4).
class indeterminate_error : public error {
  public:
    using error::error;
};

Int parse_int(std::string const& text);
/// Accepts "n", "n/d", and "-n/d"; the result is canonicalized.
Rat parse_rat(std::string const& text);
std::string to_string(Int const& x);
std::string to_string(Rat const& x);

Int ipow(Int const& base, unsigned long e);
Rat rpow(Rat const& base, long e);

/// p-adic valuation. Throws input_error("valuation of zero") on zero.
int ord_p(Int const& x, Int const& p);
int ord_p(Rat const& x, Int const& p);

/// x = sign * prod_{p in S} p^e_p * num/den with num, den > 0 coprime to every p in S.
struct SDecomposition {
    int sign = 1;
    std::map<Int, int> exponents;
    Int num = 1;
    Int den = 1;

    Rat recompose() const;
    bool is_s_unit() const { return num == 1 && den == 1; }
};

SDecomposition s_decompose(Rat const& x, std::vector<Int> const& S);

bool is_probable_prime(Int const& n);

struct FactorBudget {
    unsigned long trial_bound = 1000000;
    unsigned long rho_iterations = 2000000;
};

struct Factorization {
    int sign = 1;
    /// Primes in increasing order with multiplicities.
    std::vector<std::pair<Int, int>> factors;
    /// Composite part the budget could not split (1 when complete). Never treated as prime.
    Int unfactored = 1;

    bool complete() const { return unfactored == 1; }
    Int recompose() const;
    std::vector<Int> primes() const;
};

Factorization factor_int(Int const& n, FactorBudget const& budget = {});

/// Exact k-th root when x is a perfect k-th power (negative x allowed for odd k).
std::optional<Int> exact_root(Int const& x, unsigned long k);
std::optional<Rat> rational_sqrt(Rat const& x);

/// Primes p with lo <= p <= hi, by segmented sieve.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);
/// The first `count` primes that are not in `excluded`.
std::vector<std::uint64_t> first_primes(std::size_t count, std::vector<std::uint64_t> const& excluded = {});
std::uint64_t next_prime(std::uint64_t n);

/// Element a + b sqrt(d) of Q(sqrt d). The discriminator d travels with the value;
/// combining values with different nonzero d throws. d == 0 marks a plain rational
/// that adopts the other operand's d.
class QuadElt {
  public:
    QuadElt() = default;
    QuadElt(Rat a) : a_(std::move(a)) { a_.canonicalize(); }
    QuadElt(long a) : a_(a) {}
    QuadElt(Int const& d, Rat a, Rat b);

    Int const& d() const { return d_; }
    Rat const& rational_part() const { return a_; }
    Rat const& irrational_part() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QuadElt conj() const;
    Rat norm() const;
    QuadElt inverse() const;

    QuadElt& operator+=(QuadElt const& o);
    QuadElt& operator-=(QuadElt const& o);
    QuadElt& operator*=(QuadElt const& o);
    QuadElt& operator/=(QuadElt const& o);
    QuadElt operator-() const;

    friend QuadElt operator+(QuadElt x, QuadElt const& y) { return x += y; }
    friend QuadElt operator-(QuadElt x, QuadElt const& y) { return x -= y; }
    friend QuadElt operator*(QuadElt x, QuadElt const& y) { return x *= y; }
    friend QuadElt operator/(QuadElt x, QuadElt const& y) { return x /= y; }
    friend bool operator==(QuadElt const& x, QuadElt const& y);
    friend bool operator!=(QuadElt const& x, QuadElt const& y) { return !(x == y); }

    std::string to_string() const;

  private:
    Int const& unify(QuadElt const& o) const;

    Int d_ = 0;
    Rat a_ = 0;
    Rat b_ = 0;
};

/// Residue class modulo a word-size prime.
class FpElt {
  public:
    FpElt(std::uint64_t residue, std::uint64_t p);

    std::uint64_t residue() const { return r_; }
    std::uint64_t modulus() const { return p_; }

    FpElt operator+(FpElt const& o) const;
    FpElt operator-(FpElt const& o) const;
    FpElt operator*(FpElt const& o) const;
    FpElt inverse() const;
    bool operator==(FpElt const& o) const { return r_ == o.r_ && p_ == o.p_; }

  private:
    std::uint64_t r_;
    std::uint64_t p_;
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
/// Reduction of an arbitrary integer into [0, p).
std::uint64_t mod_ui(Int const& x, std::uint64_t p);

} // namespace m12
