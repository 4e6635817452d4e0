#pragma once

#include <span>
#include <vector>

#include "mcrec/poly.hpp"

namespace mcrec {

/// Y-linear form Q = Q~(X) + sum_{i=0}^{m} Q_i(X) Y_i.
///
/// Stored as the (m+2)-vector (Q~, Q_0, ..., Q_m). The highest Y-index m is
/// part of the type even when trailing components are zero.
class DiffForm {
  public:
    DiffForm() : comps_(2) {}
    // All-zero form with Y-indices 0..m.
    explicit DiffForm(std::size_t m) : comps_(m + 2) {}
    explicit DiffForm(std::vector<Poly> comps);

    static DiffForm y_free(std::size_t m, Poly p);
    // c(X) * Y_i
    static DiffForm y_term(std::size_t m, std::size_t i, Poly c);

    std::size_t m() const noexcept { return comps_.size() - 2; }
    std::size_t width() const noexcept { return comps_.size(); }
    const Poly& free_part() const noexcept { return comps_[0]; }
    const Poly& y(std::size_t i) const noexcept { return comps_[i + 1]; }
    Poly& free_part() noexcept { return comps_[0]; }
    Poly& y(std::size_t i) noexcept { return comps_[i + 1]; }
    // Component by vector position: 0 is Q~, 1 + i is Q_i.
    const Poly& operator[](std::size_t j) const noexcept { return comps_[j]; }
    Poly& operator[](std::size_t j) noexcept { return comps_[j]; }
    const std::vector<Poly>& comps() const noexcept { return comps_; }

    int x_degree() const noexcept;
    bool is_zero() const noexcept;
    // Largest i with Q_i != 0, or -1 when the form is Y-free.
    int top_y_index() const noexcept;

    // Same form with Y-indices up to new_m (new_m >= top_y_index()).
    DiffForm widened(std::size_t new_m) const;

    bool operator==(const DiffForm&) const = default;

  private:
    std::vector<Poly> comps_;
};

DiffForm add(const PrimeField& F, const DiffForm& a, const DiffForm& b);
DiffForm sub(const PrimeField& F, const DiffForm& a, const DiffForm& b);
DiffForm scale(const PrimeField& F, const DiffForm& a, Elem c);
DiffForm mul(const PrimeField& F, const Poly& g, const DiffForm& a);
// Componentwise reduction.
DiffForm mod(const PrimeField& F, const DiffForm& a, const Poly& m);

// Q~' + sum_i (Q_i' Y_i + Q_i Y_{i+1}); the result has highest index m + 1.
DiffForm tau(const PrimeField& F, const DiffForm& q);

// Q evaluated at X = alpha, Y_i = beta[i].
Elem evaluate(const PrimeField& F, const DiffForm& q, Elem alpha, std::span<const Elem> beta);

/// (tau^(t) q)(alpha, beta) for t = 0 .. len-1.
///
/// Uses tau^(t)(Q_i Y_i) = sum_u C(t,u) Q_i^(t-u) Y_{i+u}, so only the first
/// len derivatives of each component at alpha are needed.
/// Throws PolyError("tuple too short") when beta has no entry for Y_{m+len-1}.
std::vector<Elem> tau_vector(const PrimeField& F, const DiffForm& q, Elem alpha, std::span<const Elem> beta,
                             std::size_t len);

// Q~(X) + sum_i Q_i(X) f^(i)(X)
Poly apply_to_poly(const PrimeField& F, const DiffForm& q, const Poly& f);

}  // namespace mcrec
