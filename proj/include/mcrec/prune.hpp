#pragma once

#include <cstdint>
#include <vector>

#include "mcrec/desolve.hpp"
#include "mcrec/multcode.hpp"

namespace mcrec {

struct PruneConfig {
    // Independent randomized passes; 0 means ceil(log2(1/gamma)) * (dim + 1).
    std::size_t trials = 0;
    // A pass that branches deeper than this is abandoned.
    std::size_t max_branch_depth = 64;
    std::uint64_t seed = 1;
    // Target probability of missing a qualifying polynomial.
    double gamma = 1e-6;

    std::size_t trials_for(std::size_t dim) const;
};

/// Every f in A with agreement_count(f, word) >= threshold, sorted by
/// coefficient vector. Each pass repeatedly fixes the value at a random
/// coordinate where A still varies, branching over that coordinate's list.
std::vector<Poly> prune(const PrimeField& F, const AffineSpace& A, const ReceivedWord& word, std::size_t threshold,
                        const PruneConfig& cfg = {});

bool verify_candidate(const PrimeField& F, const Poly& f, const ReceivedWord& word, std::size_t threshold);

}  // namespace mcrec
