#include "demonsim/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace demonsim {

namespace {

// The recursion works on first-column hook lengths ("beta numbers")
// beta_i = lambda_i + (rows - 1 - i), kept strictly decreasing. Removing a
// border strip of length t is subtracting t from one beta number such that
// the result is not already present; the strip height is the number of beta
// numbers jumped over, which fixes the sign.
long long character_beta(std::vector<int> betas, const std::vector<int>& cycles,
                         std::size_t cycle_index);

std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo;
std::mutex memo_mutex;

long long character_beta(std::vector<int> betas, const std::vector<int>& cycles,
                         std::size_t cycle_index) {
    // Drop trailing zero beta numbers only when the whole tail is 0,1,2,...
    while (!betas.empty() && betas.back() == 0) {
        betas.pop_back();
        for (auto& b : betas) {
            --b;
        }
    }
    if (cycle_index == cycles.size()) {
        return betas.empty() ? 1 : 0;
    }
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        const auto it = memo.find({betas, std::vector<int>(cycles.begin() + static_cast<long>(cycle_index), cycles.end())});
        if (it != memo.end()) {
            return it->second;
        }
    }
    const int t = cycles[cycle_index];
    long long total = 0;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const int reduced = betas[i] - t;
        if (reduced < 0) {
            continue;
        }
        if (std::find(betas.begin(), betas.end(), reduced) != betas.end()) {
            continue;
        }
        std::vector<int> next = betas;
        next.erase(next.begin() + static_cast<long>(i));
        const auto insert_at = std::lower_bound(next.begin(), next.end(), reduced, std::greater<>());
        const auto jumped = insert_at - (next.begin() + static_cast<long>(i));
        next.insert(insert_at, reduced);
        const long long term = character_beta(std::move(next), cycles, cycle_index + 1);
        total += (jumped % 2 == 0) ? term : -term;
    }
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        memo.emplace(std::make_pair(betas, std::vector<int>(cycles.begin() + static_cast<long>(cycle_index), cycles.end())),
                     total);
    }
    return total;
}

} // namespace

long long character(const Partition& lambda, const Partition& type) {
    if (lambda.degree() != type.degree()) {
        throw DimensionError("character arguments must partition the same integer");
    }
    std::vector<int> betas(static_cast<std::size_t>(lambda.rows()));
    for (int i = 0; i < lambda.rows(); ++i) {
        betas[static_cast<std::size_t>(i)] = lambda.part(i) + lambda.rows() - 1 - i;
    }
    // Longest cycles first keeps the branching shallow.
    std::vector<int> cycles = type.parts();
    return character_beta(std::move(betas), cycles, 0);
}

} // namespace demonsim
