#pragma once

// Field discriminants through p-maximal orders, root discriminants, and
// Frobenius partition statistics against conjugacy-class measures.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "m12/exactnum.hpp"
#include "m12/polyalg.hpp"

namespace m12 {

/// Dedekind's criterion: is Z[x]/f maximal at p? f must be monic and squarefree.
bool dedekind_maximal(IntPoly const& f, std::uint64_t p);

/// Monic integral polynomial with the same stem field, chosen to keep the index
/// at p small: a^(n-1) f(x/a) if p does not divide a = lc(f), otherwise the same
/// after x -> 1/(x - k) for the first k with p not dividing f(k).
IntPoly monic_model(IntPoly const& f, std::uint64_t p);

struct PMaximalResult {
    int poly_valuation = 0;  ///< ord_p disc of the monic model
    int index_valuation = 0; ///< ord_p [O_K : Z[theta]]
    int field_valuation = 0; ///< ord_p disc O_K
    int enlargements = 0;
    bool dedekind = false;   ///< Z[theta] was already maximal by Dedekind's criterion
};

/// Round-2 enlargement of Z[theta] at p (f monic, squarefree, irreducible or not).
PMaximalResult p_maximal(IntPoly const& monic_f, std::uint64_t p);

/// ord_p of the discriminant of the stem field of f. Throws input_error listing the
/// factor degrees when f is reducible over Q.
int field_disc_valuation(IntPoly const& f, std::uint64_t p);

struct PartitionStat {
    std::uint64_t first_prime = 0, last_prime = 0;
    long scanned = 0;  ///< unramified primes counted
    long excluded = 0; ///< primes skipped for bad reduction
    std::map<Partition, long> counts;
};

struct FieldReport {
    std::string source;
    int degree = 0;
    int sign = 1;
    std::map<std::uint64_t, int> disc; ///< field-disc valuations, zero entries kept for checked primes
    double rd = 1.0;
    std::vector<int> factor_degrees; ///< irreducible factors of the algebra
    std::optional<PartitionStat> partitions;
    std::map<std::string, std::string> verdicts;
    std::vector<std::string> notes;

    Int discriminant() const;
};

struct FieldDiscOptions {
    /// Primes to examine. When complete_support is false the prime support of the
    /// polynomial discriminant is factored and added.
    std::vector<std::uint64_t> primes;
    bool complete_support = false;
    /// Check that the polynomial discriminant off the examined primes is a square.
    bool check_square_cofactor = true;
};

/// Field discriminant of Q[x]/f (summed over the factors when f is reducible).
/// Throws indeterminate_error if the discriminant support cannot be factored.
FieldReport field_discriminant(IntPoly const& f, FieldDiscOptions const& opt = {}, std::string const& source = "");

double root_discriminant(FieldReport const& report);

/// First `count` primes >= start, skipping `skip`.
struct PrimeRange {
    std::uint64_t start = 2;
    long count = 10000;
    std::vector<std::uint64_t> skip;
};

PartitionStat partition_scan(IntPoly const& f, PrimeRange const& range);

/// Joint factorization patterns of several polynomials at the same primes; a prime is
/// excluded when any of them has bad reduction there.
struct JointStat {
    long scanned = 0, excluded = 0;
    std::uint64_t last_prime = 0;
    std::map<std::vector<Partition>, long> counts;
};
JointStat joint_scan(std::vector<IntPoly> const& fs, PrimeRange const& range);

/// Conjugacy-class measure pushed to partitions of a permutation representation.
struct GroupModel {
    std::string name;
    int degree = 0;
    Int order = 0;
    std::map<Partition, Rat> measure;
};

/// Models built from the class table: "M12" (lambda12), "M12t" (lambda12 twin),
/// "2.M12" (lambda24), "2.M12t", "M12.2" (degree 24), "2.M12.2" (degree 48),
/// "L2(11)" (transitive degree 12, for drop comparisons).
GroupModel const& group_model(std::string const& name);
std::vector<std::string> group_model_names();

struct ClassRow {
    std::string cls;
    long size;
    Partition l12, l12t, l24, l24t;
    long count12 = -1, count24 = -1; ///< printed scan counts, -1 when blank
    bool outer = false;              ///< row below the divider (M12.2 minus M12)
};
/// The printed conjugacy-class table, one entry per line.
std::vector<ClassRow> const& class_table();

struct DropVerdict {
    bool consistent = true;
    std::vector<Partition> missing; ///< expected count >= 10 but never observed
    std::vector<Partition> extra;   ///< observed outside the model support
    std::string wording() const;
};
DropVerdict drop_detect(PartitionStat const& stat, GroupModel const& model);

struct ZScore {
    Partition partition;
    long observed = 0;
    double expected = 0, z = 0;
    bool tested = false; ///< expected >= floor
};
/// Binomial z-scores per model partition (and per observed partition outside it).
std::vector<ZScore> z_scores(PartitionStat const& stat, GroupModel const& model, double floor = 10);
bool within_sigma(std::vector<ZScore> const& zs, double sigma = 4);

/// Primes p in [lo, hi] at which f splits into linear factors.
std::vector<std::uint64_t> splitting_primes(IntPoly const& f, std::uint64_t lo, std::uint64_t hi);

} // namespace m12
