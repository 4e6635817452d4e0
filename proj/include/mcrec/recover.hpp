#pragma once

#include <optional>
#include <vector>

#include "mcrec/desolve.hpp"
#include "mcrec/lattice.hpp"
#include "mcrec/multcode.hpp"
#include "mcrec/prune.hpp"

namespace mcrec {

struct RecoveryParams {
    CodeParams code;
    std::size_t ell = 1;
    std::size_t m = 0;
    std::optional<double> epsilon;  // set in capacity mode
    std::size_t threshold = 0;      // agreement count t*
    // Bound on x_degree(Q) behind the threshold: n ell (s-m)/m + n ell in
    // capacity mode, the Minkowski bound of the method in manual mode.
    std::size_t degree_bound = 0;
    // (ell/eps)^((1 + log2 ell)/eps); reported only, never enforced.
    double list_bound = 0;
    InterpolationMethod method = InterpolationMethod::automatic;
};

// 16 ell/eps^2 + 4 ell/eps; capacity mode needs s strictly above it.
double required_s(std::size_t ell, double epsilon);

/// Capacity-mode parameters: m = ceil(4 ell/eps) and t* the least integer
/// above n ell/m + (n ell + k)/(s-m). Throws ParamError when eps is outside
/// (0, 1-R] or s is too small.
RecoveryParams derive_parameters(const CodeParams& code, std::size_t ell, double epsilon);

/// Manual-mode parameters. The threshold must satisfy
/// threshold (s-m) >= floor(D/(m+2)) + k with D the determinant-degree bound
/// of the interpolation method, which makes every qualifying f a root of Q.
RecoveryParams manual_parameters(const CodeParams& code, std::size_t ell, std::size_t m, std::size_t threshold,
                                 InterpolationMethod method = InterpolationMethod::automatic);

// Per-stage results and timings of one pipeline run.
struct RecoveryTrace {
    Interpolation interpolation;
    AffineSpace space;
    double basis_ms = 0, reduce_ms = 0, solve_ms = 0, prune_ms = 0;
};

/// interpolate_difform -> solve_de -> prune. Returns every f of degree < k with
/// agreement >= params.threshold, sorted by coefficient vector (up to the
/// prune failure budget).
std::vector<Poly> list_recover(const ReceivedWord& word, const RecoveryParams& params, const PruneConfig& cfg = {},
                               RecoveryTrace* trace = nullptr);

std::vector<Poly> list_recover_manual(const ReceivedWord& word, std::size_t s, std::size_t m, std::size_t ell,
                                      std::size_t k, std::size_t threshold, const PruneConfig& cfg = {},
                                      RecoveryTrace* trace = nullptr);

}  // namespace mcrec
