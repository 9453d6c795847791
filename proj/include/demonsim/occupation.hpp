#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "demonsim/errors.hpp"

namespace demonsim {

// Photon counts per output mode, s_j >= 0.
class OccupationVector {
public:
    explicit OccupationVector(std::vector<int> counts);

    int modes() const { return static_cast<int>(counts_.size()); }
    int total() const;
    const std::vector<int>& counts() const { return counts_; }
    int operator[](int mode) const { return counts_[static_cast<std::size_t>(mode)]; }

    // Output modes listed with multiplicity, ascending: (0,2,1,0) -> {1,1,2}.
    std::vector<int> mode_multiset() const;

    // Counts sorted descending; outcomes with equal type are exchangeable
    // under mode relabeling.
    std::vector<int> occupancy_type() const;

    friend auto operator<=>(const OccupationVector&, const OccupationVector&) = default;

private:
    std::vector<int> counts_;
};

// All occupation vectors of N photons over M modes, ascending lexicographic:
// (0,...,0,N) first ... (N,0,...,0) last.
std::vector<OccupationVector> enumerate_outcomes(int modes, int photons);

// prod_j s_j!, the bosonic degeneracy of the outcome.
long long symmetry_factor(const OccupationVector& s);

// Distinct occupied input modes, strictly increasing; one photon per mode.
class InputConfiguration {
public:
    explicit InputConfiguration(std::vector<int> modes);

    static InputConfiguration first_modes(int photons);

    int photons() const { return static_cast<int>(modes_.size()); }
    const std::vector<int>& modes() const { return modes_; }
    int mode(int index) const { return modes_[static_cast<std::size_t>(index)]; }

private:
    std::vector<int> modes_;
};

} // namespace demonsim
