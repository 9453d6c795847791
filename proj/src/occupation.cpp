#include "demonsim/occupation.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "demonsim/partitions.hpp"

namespace demonsim {

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) {
        throw DimensionError("occupation vector needs at least one mode");
    }
    for (const int c : counts_) {
        if (c < 0) {
            throw DimensionError("occupation counts must be non-negative");
        }
    }
}

int OccupationVector::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0);
}

std::vector<int> OccupationVector::mode_multiset() const {
    std::vector<int> modes;
    modes.reserve(static_cast<std::size_t>(total()));
    for (int mode = 0; mode < this->modes(); ++mode) {
        modes.insert(modes.end(), static_cast<std::size_t>(counts_[static_cast<std::size_t>(mode)]), mode);
    }
    return modes;
}

std::vector<int> OccupationVector::occupancy_type() const {
    std::vector<int> type = counts_;
    std::sort(type.begin(), type.end(), std::greater<>());
    return type;
}

std::vector<OccupationVector> enumerate_outcomes(int modes, int photons) {
    if (modes <= 0 || photons < 0) {
        throw DimensionError("enumerate_outcomes requires modes > 0 and photons >= 0");
    }
    std::vector<OccupationVector> out;
    std::vector<int> current(static_cast<std::size_t>(modes), 0);
    // Depth-first over mode 0 upward, low counts first, emits ascending lex.
    const auto recurse = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == modes - 1) {
            current[static_cast<std::size_t>(mode)] = remaining;
            out.emplace_back(current);
            return;
        }
        for (int count = 0; count <= remaining; ++count) {
            current[static_cast<std::size_t>(mode)] = count;
            self(self, mode + 1, remaining - count);
        }
    };
    recurse(recurse, 0, photons);
    return out;
}

long long symmetry_factor(const OccupationVector& s) {
    long long product = 1;
    for (const int count : s.counts()) {
        product *= factorial(count);
    }
    return product;
}

InputConfiguration::InputConfiguration(std::vector<int> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) {
        throw DimensionError("input configuration needs at least one photon");
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i] < 0) {
            throw DimensionError("input modes must be non-negative");
        }
        if (i > 0 && modes_[i] <= modes_[i - 1]) {
            throw DimensionError("input modes must be strictly increasing");
        }
    }
}

InputConfiguration InputConfiguration::first_modes(int photons) {
    std::vector<int> modes(static_cast<std::size_t>(photons));
    std::iota(modes.begin(), modes.end(), 0);
    return InputConfiguration(std::move(modes));
}

} // namespace demonsim
