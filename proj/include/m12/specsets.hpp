#pragma once

// S-unit ABC specialization sets: membership, search, arms and tame prediction.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "m12/covers.hpp"
#include "m12/exactnum.hpp"

namespace m12 {

/// Monodromy orders (m0, m1, minf).
struct Orders {
    int m0 = 1, m1 = 1, minf = 1;
    friend bool operator==(Orders const&, Orders const&) = default;
};
Orders parse_orders(std::string const& text); ///< "3,2,11"
std::string to_string(Orders const& m);

/// Parses "2,3,11" into a sorted prime list.
std::vector<Int> parse_prime_set(std::string const& text);
std::string prime_set_string(std::vector<Int> const& S);

/// a x^m0 + b y^m1 + c z^minf = 0 with a, b, c S-units and x, y, z > 0 coprime to S.
struct AbcWitness {
    Int a, x, b, y, c, z;
    bool holds(Orders const& m) const;
};

struct SpecPoint {
    Rat tau;
    Orders orders;
    std::vector<Int> S;
    std::optional<AbcWitness> witness;
};

enum class ArmLocation { generic, arm0, arm1, arm_inf };
std::string to_string(ArmLocation a);

struct ArmClass {
    Int p;
    ArmLocation location = ArmLocation::generic;
    int j = 0; ///< extremality index, 0 when generic
};

/// Position of tau in T(Q_p) relative to the cusps 0, 1, infinity.
ArmClass classify_arm(Rat const& tau, Int const& p);

enum class Membership { member, non_member, indeterminate };
std::string to_string(Membership m);

struct MembershipResult {
    Membership verdict = Membership::non_member;
    std::string reason;
    std::optional<AbcWitness> witness; ///< normalized, when a member
};

/// Is tau in T_{m0,m1,minf}(Z^S)? Decided exactly: the S-free parts of the numerators
/// of tau and tau - 1 and of the denominator must be perfect m0-th, m1-th and minf-th powers.
MembershipResult validate_membership(Rat const& tau, Orders const& m, std::vector<Int> const& S);

/// Normalized witness of a member: y-term positive, S-parts carried by a, b, c.
/// Throws input_error when tau is not a member.
AbcWitness normalized_witness(Rat const& tau, Orders const& m, std::vector<Int> const& S);

/// All normalized solutions with |a x^m0|, |c z^minf| <= H, sorted by height then tau.
/// H is limited to 4e18.
std::vector<SpecPoint> search(Orders const& m, std::vector<Int> const& S, Int const& H);

/// Points of the (4,4),10 set for covers B and B^t: sigma = +-sqrt(5(1 - tau)) for base
/// points where that is rational, plus sigma = 0. Sorted, without duplicates.
struct BPoint {
    Rat sigma;
    std::optional<Rat> base_tau; ///< absent for sigma = 0
};
std::vector<BPoint> derive_B_points(std::vector<SpecPoint> const& base);

/// Predicted ord_p of the field discriminant of the specialization at a prime outside the
/// cover's bad primes: n - sum over cycles c of gcd(c, j) on an arm with index j, else 0.
int predict_tame(CoverSpec const& cover, Rat const& value, std::uint64_t p);

/// Height of tau = max(|numerator|, denominator).
Int height(Rat const& tau);

// Line records: "tau_num/tau_den  a x b y c z  m0,m1,minf  p1,p2,..."
std::string to_record(SpecPoint const& pt);
SpecPoint parse_record(std::string const& line);
void write_records(std::ostream& os, std::vector<SpecPoint> const& pts);
/// Skips blank lines and '#' comments.
std::vector<SpecPoint> read_records(std::istream& is);

} // namespace m12
