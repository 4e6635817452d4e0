#pragma once

#include <optional>
#include <vector>

#include "mcrec/difform.hpp"
#include "mcrec/multcode.hpp"

namespace mcrec {

/// Affine set of polynomials of degree < k: offset + span(basis), or empty.
///
/// Canonical form: every basis polynomial is monic, basis degrees are distinct
/// and increasing, and no basis polynomial or the offset has a nonzero
/// coefficient at another basis polynomial's degree. Equal sets therefore
/// compare equal.
struct AffineSpace {
    std::size_t k = 0;
    std::optional<Poly> offset;
    std::vector<Poly> basis;

    static AffineSpace empty_space(std::size_t k) { return AffineSpace{k, std::nullopt, {}}; }
    // Canonicalizes; `spanning` may be linearly dependent.
    static AffineSpace make(const PrimeField& F, std::size_t k, const Poly& offset, const std::vector<Poly>& spanning);
    // Every polynomial of degree < k.
    static AffineSpace everything(const PrimeField& F, std::size_t k);

    bool is_empty() const noexcept { return !offset.has_value(); }
    std::size_t dimension() const noexcept { return basis.size(); }
    // offset + sum c_i basis_i
    Poly point(const PrimeField& F, const std::vector<Elem>& c) const;
    bool contains(const PrimeField& F, const Poly& f) const;

    bool operator==(const AffineSpace&) const = default;
};

enum class DeMethod { automatic, dense, series };

/// { f : deg f < k, apply_to_poly(q, f) = 0 }.
///
/// dense: elimination on the (x_degree + k) x k coefficient system.
/// series: coefficient recurrence around a point where the top Y-coefficient
/// is nonzero, with relaxed convolutions; needs p > k + m and NTT support.
/// Throws ParamError("degenerate equation") when q is zero.
AffineSpace solve_de(const PrimeField& F, const DiffForm& q, std::size_t k,
                     DeMethod method = DeMethod::automatic);

// { f in A : f^(t)(alpha) = beta[t] for t < |beta| }
AffineSpace affine_constrain(const PrimeField& F, const AffineSpace& A, Elem alpha, const Symbol& beta);

struct EvalMap {
    // f -> (f(alpha), ..., f^(s-1)(alpha)) takes a single value on A.
    bool constant = true;
    // Rank of its linear part; the dimension drop when a value is fixed.
    std::size_t rank = 0;
};
EvalMap affine_member_at(const PrimeField& F, const AffineSpace& A, Elem alpha, std::size_t s);

}  // namespace mcrec
