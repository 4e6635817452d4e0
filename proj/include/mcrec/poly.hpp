#pragma once

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "mcrec/field.hpp"

namespace mcrec {

// Degree reported for the zero polynomial. Compares below every real degree.
inline constexpr int kZeroDegree = -1;

/// Dense univariate polynomial over a prime field, lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero polynomial
/// is the empty vector and structural equality is polynomial equality.
/// Coefficients are assumed canonical for whatever field the caller works in;
/// the polynomial does not remember its field.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Elem> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Elem> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(Elem c) { return Poly(std::vector<Elem>{c}); }
    static Poly monomial(Elem c, std::size_t d);

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::size_t size() const noexcept { return c_.size(); }
    Elem operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    Elem leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
    const std::vector<Elem>& coeffs() const noexcept { return c_; }
    std::vector<Elem> take() && { return std::move(c_); }

    friend bool operator==(const Poly&, const Poly&) = default;

  private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Elem> c_;
};

class PolyError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Below this size both operands use schoolbook multiplication.
inline constexpr std::size_t kMulCrossover = 32;

Poly add(const PrimeField& F, const Poly& a, const Poly& b);
Poly sub(const PrimeField& F, const Poly& a, const Poly& b);
Poly neg(const PrimeField& F, const Poly& a);
Poly scale(const PrimeField& F, const Poly& a, Elem c);
// a * X^k
Poly shift_up(const Poly& a, std::size_t k);
// Coefficients [lo, hi) as a polynomial.
Poly slice(const Poly& a, std::size_t lo, std::size_t hi);
// a mod X^k
Poly truncate(const Poly& a, std::size_t k);

Poly mul(const PrimeField& F, const Poly& a, const Poly& b);
Poly mul_schoolbook(const PrimeField& F, const Poly& a, const Poly& b);
Poly mul_karatsuba(const PrimeField& F, const Poly& a, const Poly& b);
// Empty result when the field lacks a large enough power-of-two root of unity.
bool ntt_supported(const PrimeField& F, std::size_t result_size);
Poly mul_ntt(const PrimeField& F, const Poly& a, const Poly& b);
// In-place cyclic transform; a.size() must be a power of two the field supports.
void ntt(const PrimeField& F, std::vector<Elem>& a, bool inverse);

// a = q*b + r with deg r < deg b. Throws PolyError when b = 0.
std::pair<Poly, Poly> divrem(const PrimeField& F, const Poly& a, const Poly& b);
Poly mod(const PrimeField& F, const Poly& a, const Poly& b);

/// Precomputed reciprocal of a fixed divisor, for repeated reductions by the
/// same modulus (the product-tree moduli in the lattice code).
class Reducer {
  public:
    Reducer(const PrimeField& F, Poly modulus);
    const Poly& modulus() const noexcept { return m_; }
    Poly reduce(const Poly& a) const;

  private:
    const PrimeField* F_;
    Poly m_;
    Poly rev_inv_;  // 1 / rev(m) mod X^inv_len_
    std::size_t inv_len_ = 0;
};

// Power series inverse of a mod X^n; a[0] must be nonzero.
Poly series_inverse(const PrimeField& F, const Poly& a, std::size_t n);

Elem eval(const PrimeField& F, const Poly& a, Elem x);
// order-th formal derivative
Poly derivative(const PrimeField& F, const Poly& a, std::size_t order = 1);
// (a(x), a'(x), ..., a^(count-1)(x))
std::vector<Elem> eval_derivs(const PrimeField& F, const Poly& a, Elem x, std::size_t count);

// Taylor coefficients of a at x: a(X + x) written in powers of X.
Poly taylor_shift(const PrimeField& F, const Poly& a, Elem x);

// Extended Euclid: (g, s, t) with s*a + t*b = g, g monic (or zero).
struct XgcdResult {
    Poly g, s, t;
};
XgcdResult xgcd(const PrimeField& F, const Poly& a, const Poly& b);

// b with a*b = 1 mod m. Throws PolyError("not invertible modulo m").
Poly invmod(const PrimeField& F, const Poly& a, const Poly& m);

// Unique f, deg f < deg m1 + deg m2, f = v1 mod m1, f = v2 mod m2.
// Throws PolyError("moduli not coprime").
Poly crt_pair(const PrimeField& F, const Poly& v1, const Poly& m1, const Poly& v2, const Poly& m2);
// Same, with m1^{-1} mod m2 supplied by the caller.
Poly crt_pair_with_inverse(const PrimeField& F, const Poly& v1, const Poly& m1, const Poly& v2, const Poly& m2,
                           const Poly& m1_inv_mod_m2);

// Polynomial of degree < values.size() with C^(j)(alpha) = values[j].
// Throws PolyError("factorial not invertible") when values.size() > p.
Poly taylor_at(const PrimeField& F, Elem alpha, std::span<const Elem> values);

// Dense matrix of polynomials, row-major.
using PolyMatrix = std::vector<std::vector<Poly>>;

// Entries at most this long use schoolbook products in mat_mul.
inline constexpr std::size_t kMatMulCrossover = 16;

// A * B; shares transforms across entries when the field supports NTT.
PolyMatrix mat_mul(const PrimeField& F, const PolyMatrix& A, const PolyMatrix& B);

// (X - alpha)^e
Poly linear_power(const PrimeField& F, Elem alpha, std::size_t e);
// prod_i (X - roots[i])^e, by balanced product tree.
Poly product_of_linear_powers(const PrimeField& F, std::span<const Elem> roots, std::size_t e);

}  // namespace mcrec
