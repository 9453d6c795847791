#pragma once

#include <vector>

#include "demonsim/matrix.hpp"
#include "demonsim/rng.hpp"

namespace demonsim {

// Haar-distributed random unitary: complex Ginibre matrix followed by QR,
// with each Q column rephased by the unit phase of the matching diagonal of
// R. Without the rephasing step the QR sign convention of the backend leaks
// into the distribution and it is no longer invariant.
UnitaryMatrix sample_haar(int dim, RandomSeed seed);

// K independent draws on substreams 0..count-1 of `seed`.
std::vector<UnitaryMatrix> sample_haar_ensemble(int dim, std::size_t count, RandomSeed seed);

} // namespace demonsim
