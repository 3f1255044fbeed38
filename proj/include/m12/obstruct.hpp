#pragma once

// Local Hilbert symbols and the lifting obstructions built from them.

#include <string>
#include <vector>

#include "m12/exactnum.hpp"

namespace m12 {

/// A place of Q: a prime, or infinity when p == 0.
struct Place {
    Int p = 0;
    bool infinite() const { return p == 0; }
    static Place infinity() { return {}; }
    static Place prime(Int q);
    friend bool operator==(Place const& a, Place const& b) { return a.p == b.p; }
    friend bool operator<(Place const& a, Place const& b) { return a.p < b.p; }
};
std::string to_string(Place const& v);
/// "oo", "inf" or a prime.
Place parse_place(std::string const& text);

/// (a, b)_v in {+1, -1}.
int hilbert_symbol(Rat const& a, Rat const& b, Place const& v);

/// Places where (a, b)_v can be -1: infinity, 2, and the primes of a and b.
std::vector<Place> relevant_places(Rat const& a, Rat const& b);

struct ObstructionReport {
    Rat a, b; ///< the symbol arguments
    std::vector<std::pair<Place, int>> symbols;
    int product = 1;
    std::vector<Place> obstructed;
    bool liftable() const { return obstructed.empty(); }
    std::string verdict() const;
};

/// Local root numbers of K(B, tau) as the symbols (25 - 5 tau^2, tau)_v.
ObstructionReport b_cover_obstruction(Rat const& tau);

struct ConjugationVerdict {
    std::string cover;
    std::string verdict;
    std::string rule;
    bool deferred = false; ///< decided per specialization by b_cover_obstruction
};
ConjugationVerdict conjugation_obstruction(std::string const& cover_id);

/// Product of (a, b)_v over all places equals +1.
bool reciprocity_check(Rat const& a, Rat const& b);

} // namespace m12
