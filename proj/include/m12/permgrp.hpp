#pragma once

// Permutations on {1..n}, Schreier-Sims group orders, Riemann-Hurwitz genus
// of partition triples, and checks of printed monodromy data.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "m12/exactnum.hpp"
#include "m12/polyalg.hpp"

namespace m12 {

/// Bijection of {0..n-1}; text I/O is 1-based (or uses caller-supplied labels).
/// Products act left to right: (a * b)(i) = b(a(i)).
class Perm {
  public:
    Perm() = default;
    explicit Perm(int n);
    explicit Perm(std::vector<int> images);

    /// Cycle notation "(1,2,3)(4,5)". Fixed points may be listed or omitted.
    static Perm parse(std::string const& text, int n);
    /// Cycle notation over arbitrary point names, e.g. "(3b,4b,5b)(1w,2w)".
    static Perm parse(std::string const& text, std::vector<std::string> const& labels);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[i]; }
    std::vector<int> const& images() const { return img_; }

    Perm inverse() const;
    Perm pow(long e) const;
    bool is_identity() const;
    Partition cycle_type() const;
    Int order() const;
    /// Cycle notation with fixed points omitted; "()" for the identity.
    std::string to_string() const;
    std::string to_string(std::vector<std::string> const& labels) const;

    friend Perm operator*(Perm const& a, Perm const& b);
    friend bool operator==(Perm const& a, Perm const& b) { return a.img_ == b.img_; }
    friend bool operator!=(Perm const& a, Perm const& b) { return a.img_ != b.img_; }
    friend bool operator<(Perm const& a, Perm const& b) { return a.img_ < b.img_; }

  private:
    std::vector<int> img_;
};

/// Conjugate a^-1 g a.
Perm conjugate(Perm const& g, Perm const& a);

/// Base and strong generating set built by Schreier-Sims.
class PermGroup {
  public:
    PermGroup(std::vector<Perm> generators, int degree);

    Int order() const;
    bool contains(Perm const& g) const;
    int degree() const { return n_; }
    std::vector<int> const& base() const { return base_; }
    std::vector<Perm> const& generators() const { return gens_; }

  private:
    struct Level {
        int point;
        std::vector<Perm> gens;
        std::vector<int> orbit;
        std::vector<std::optional<Perm>> transversal; // u with u(point) = beta
    };

    void rebuild_orbit(Level& lv) const;
    /// Returns the residue and the first level where sifting stopped.
    std::pair<Perm, std::size_t> sift(Perm g, std::size_t from = 0) const;
    void add_strong_generator(Perm const& g, std::size_t level);
    void random_phase(std::uint64_t seed);
    void deterministic_phase();

    int n_;
    std::vector<Perm> gens_;
    std::vector<int> base_;
    std::vector<Level> levels_;
};

Int group_order(std::vector<Perm> const& gens);
/// g restricted to a union of its cycles, relabelled 0..|points|-1 in the given order.
Perm restrict_to(Perm const& g, std::vector<int> const& points);
std::vector<std::vector<int>> orbits(std::vector<Perm> const& gens, int n);
bool is_transitive(std::vector<Perm> const& gens, int n);

struct PartitionTriple {
    Partition l0, l1, linf;
};

/// g with 2 - 2g = 2n - sum_k (n - #parts(lambda_k)). Throws contract_error("parity violation")
/// when g is not an integer. Negative g signals a non-realizable triple.
int triple_genus(PartitionTriple const& t, int n);

/// Printed monodromy of a cover together with what it is expected to satisfy.
struct MonodromyData {
    enum class Conjugation { real_cusps, swapped_cusps };

    int degree = 12;
    Perm g0, g1;
    std::optional<Perm> sigma;
    Conjugation conjugation = Conjugation::real_cusps;
    PartitionTriple expected;
    Int expected_order = 95040;
    /// Check that sigma already lies in <g0, g1>.
    bool sigma_in_group = false;
    /// Order of <g0, g1, sigma>, when sigma is expected to enlarge the group.
    std::optional<Int> expected_order_with_sigma;
    /// Orbits of <g0, g1>. Above 1 the genus is taken per orbit and transitivity
    /// is required of <g0, g1, sigma> instead.
    int components = 1;
};

struct MonodromyCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct MonodromyReport {
    bool available = true;
    std::string note;
    std::vector<MonodromyCheck> checks;
    Int order = 0;
    /// Genus of the cover, or of each component when <g0, g1> is intransitive.
    std::optional<int> genus;
    PartitionTriple observed;

    bool all_passed() const;
};

MonodromyReport verify_monodromy(MonodromyData const& data);

/// Degree-24 representation on {1..12} u {1'..12'}: each generator acts as g on
/// the first copy and as its twin on the second; sigma swaps e with e'.
Perm twin_sum(Perm const& g, Perm const& twin);
Perm bar_swap(int n);

/// Cycle-type comparison of rho(w) and its twin over all positive words in g0, g1.
struct TwinScan {
    /// Distinct rho(w) over words of length <= max_length.
    std::size_t distinct_up_to_max = 0;
    /// First word length where cycle types disagree, and the two cycle types.
    std::optional<int> first_divergence;
    std::vector<std::pair<int, std::pair<Partition, Partition>>> divergences;
    /// A word of length first_divergence witnessing it, letters 0/1.
    std::vector<int> witness;
};

TwinScan scan_twin_words(Perm const& g0, Perm const& g1, Perm const& t0, Perm const& t1, int max_length,
                         int distinct_length);

/// rho(w) for a word in letters 0/1, evaluated left to right.
Perm evaluate_word(std::vector<int> const& word, Perm const& g0, Perm const& g1);

} // namespace m12
