#pragma once

#include "demonsim/partitions.hpp"

namespace demonsim {

// Irreducible character chi^lambda evaluated on the class with the given
// cycle type, by the Murnaghan-Nakayama recursion. Exact 64-bit integers;
// results are memoized process-wide (thread-safe).
//
// Both arguments must partition the same integer d.
long long character(const Partition& lambda, const Partition& cycle_type);

} // namespace demonsim
