#pragma once

// Catalog of the six dodecic three-point covers, their rationalized degree-24
// forms and lift recipes, plus the printed reference polynomials.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "m12/exactnum.hpp"
#include "m12/permgrp.hpp"
#include "m12/polyalg.hpp"

namespace m12 {

/// Cusp layout of the parameter line.
enum class ParamKind {
    t,      ///< cusps 0, 1, infinity
    s_real, ///< cusps -sqrt(5), sqrt(5), infinity
    s_imag, ///< cusps -sqrt(-11), sqrt(-11), infinity
};

/// Polynomial in x whose coefficients are polynomials in the parameter over Q(sqrt d).
/// by_param[k] is the coefficient of param^k.
struct FamilyPoly {
    std::vector<QuadPoly> by_param;

    int degree_param() const { return static_cast<int>(by_param.size()) - 1; }
    int degree_x() const;
    bool is_rational() const;
    QuadPoly at(Rat const& value) const;
    void trim();

    friend FamilyPoly operator+(FamilyPoly const& a, FamilyPoly const& b);
    friend FamilyPoly operator-(FamilyPoly const& a, FamilyPoly const& b);
    friend FamilyPoly operator*(FamilyPoly const& a, FamilyPoly const& b);
    friend bool operator==(FamilyPoly const& a, FamilyPoly const& b) { return a.by_param == b.by_param; }
    FamilyPoly pow(unsigned e) const;
};

/// Symbol roles for parse_family.
struct ExprSymbols {
    char x = 'x';
    char param = 't';
    char root = 0;     ///< symbol standing for sqrt(d); 0 when absent
    Int d = 0;
    std::map<char, Int> constants; ///< e.g. {'e', 11}
};

/// Sums of products of integers, symbols, powers and parenthesized subexpressions.
/// Juxtaposition multiplies: "2^9 3^12 (253 u + 67) t x".
FamilyPoly parse_family(std::string const& text, ExprSymbols const& sym);

/// Digit-sum checksum per parameter degree (see the catalog file header).
std::vector<long> family_checksum(FamilyPoly const& f);

enum class LiftKind { none, square_substitution, resultant_h };

struct CoverSpec {
    std::string id;
    std::string base;          ///< the cover a rationalized entry derives from ("C" for C2), else id
    Int d = 0;                 ///< 0 for Q, else the quadratic field of definition
    char root_symbol = 0;
    ParamKind param = ParamKind::t;
    char param_symbol = 't';
    int degree = 12;
    PartitionTriple triple;
    std::vector<int> bad_primes;
    std::map<int, char> behavior; ///< U, T, W per bad prime
    std::vector<std::string> groups;
    std::string twin;
    std::optional<FamilyPoly> poly; ///< absent when the equation is not printed
    LiftKind lift = LiftKind::none;
    std::string lift_note;
    /// The lift is built from f(t, lift_scale * X) in the coordinate X of the lift recipe.
    QuadElt lift_scale = QuadElt(1L);
    std::optional<MonodromyData> monodromy;
    std::string monodromy_note;
    PartitionTriple lift_triple;   ///< degree-24 partitions of the lift (first row), when known
    std::optional<int> lift_genus;

    bool rationalized() const { return base != id; }
};

struct Catalog {
    int version = 0;
    std::vector<CoverSpec> covers;
    std::string h_printed;                  ///< h(x) exactly as printed, with its stray symbols
    std::string h_reading;                  ///< chosen reading label
    std::map<std::string, std::string> h_candidates; ///< label -> expression

    CoverSpec const& get(std::string const& id) const;
    bool has(std::string const& id) const;
    /// h(x) over Q(sqrt -11) for the given reading label (default: recorded choice).
    QuadPoly h(std::string const& label = "") const;
};

/// Parses and validates catalog text (checksums, partition sums, degrees).
Catalog load_catalog(std::string const& text);
/// The catalog compiled into the library.
Catalog const& catalog();
std::string const& embedded_catalog_text();

struct SpecializedField {
    std::string cover;
    Rat value;
    IntPoly poly;
    int degree = 0;
    std::string note;
};

/// Primitive integral polynomial of cover `id` at the parameter value.
/// Throws input_error for cusps and for covers without a printed rational form,
/// contract_error when the specialization is not separable.
SpecializedField specialize(std::string const& id, Rat const& value);

/// The two degree-12 factors of f_E2(1 + s^2/11, x), in a canonical order; the
/// pairs for s and -s coincide.
std::pair<SpecializedField, SpecializedField> specialize_E_twins(Rat const& s);

/// Degree-48 lift polynomial for A2, C2, D2, built in the recipe coordinate
/// x = lift_scale * X (scaled = false applies the recipe to the printed x).
SpecializedField build_lift(std::string const& id, Rat const& value, std::string const& h_label = "",
                            bool scaled = true);

/// Characteristic polynomial of alpha(theta) over Q(sqrt d), theta a root of f.
QuadPoly charpoly(QuadPoly const& f, QuadPoly const& alpha);

/// Picks the h(x) reading whose degree-48 lift at tau = 5^3/2^2 has the same
/// factorization patterns as the printed lift fixture at `primes` good primes.
struct HReadingResult {
    std::string chosen;
    std::map<std::string, int> agreements; ///< label -> primes with matching pattern
    int primes_compared = 0;
};
HReadingResult select_h_reading(int primes = 40);

struct Fixture {
    std::string id;
    std::string where;
    char var = 'x';
    IntPoly poly;
    std::string note;
};
std::vector<Fixture> const& fixtures();
Fixture const& fixture(std::string const& id);

/// Monodromy data of a cover, or a report marked unavailable.
MonodromyReport verify_cover_monodromy(std::string const& id);

/// Degree-24 monodromy (rho(g) on the first copy, its twin on the barred copy,
/// sigma swapping the copies) for covers with a printed twin convention.
MonodromyData rationalized_monodromy(std::string const& id);

/// Degree-24 data for E2 built from the E2 dessin rules.
MonodromyData e2_monodromy();

/// Printed lift generators on +-{1..12}.
MonodromyData d_lift_monodromy();

} // namespace m12
