#pragma once

// End-to-end study of one specialization: field, discriminant, statistics, verdicts.

#include <cstdint>
#include <string>
#include <vector>

#include "m12/covers.hpp"
#include "m12/ramify.hpp"

namespace m12 {

/// Primes where K(cover, value) can ramify: the bad primes, the primes of the
/// parameter's distance to the cusps, and for lifts 2 and the primes of the lift scale.
/// Throws indeterminate_error when one of those numbers cannot be factored.
std::vector<std::uint64_t> candidate_primes(CoverSpec const& cover, Rat const& value, bool lift = false);

struct AnalyzeOptions {
    long scan_primes = 2000; ///< 0 skips the partition scan
    bool lift = false;       ///< analyze the degree-48 lift (A2, C2, D2)
    std::string h_label;     ///< lift reading, default from the catalog
};

/// Specialize, compute the field discriminant over the candidate primes, scan Frobenius
/// partitions and attach drop / frequency / obstruction verdicts. Cover E yields the two
/// twin fields for its parameter s; everything else yields one report.
std::vector<FieldReport> analyze(std::string const& cover_id, Rat const& value, AnalyzeOptions const& opt = {});

/// Group model used for partition statistics of a field of this degree from this cover.
std::string model_for(CoverSpec const& cover, int degree);

} // namespace m12
