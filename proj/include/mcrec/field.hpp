#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mcrec {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Canonical residue in [0, p).
using Elem = u64;

// 2^64 - 2^32 + 1. Two-adicity 32, multiplicative generator 7.
inline constexpr u64 kGoldilocks = 0xFFFFFFFF00000001ULL;

class FieldError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

bool is_prime(u64 n);

class PrimeField {
  public:
    explicit PrimeField(u64 modulus = kGoldilocks);

    u64 modulus() const noexcept { return p_; }
    bool is_goldilocks() const noexcept { return goldilocks_; }

    Elem reduce(u64 x) const noexcept { return x >= p_ ? x % p_ : x; }
    Elem from_signed(std::int64_t x) const noexcept;

    Elem add(Elem a, Elem b) const noexcept
    {
        // Branch-free: carry out of 64 bits or overflow past p both subtract p.
        u64 r = a + b;
        u64 over = static_cast<u64>(r < a) | static_cast<u64>(r >= p_);
        return r - (p_ & (0 - over));
    }
    Elem sub(Elem a, Elem b) const noexcept { return a - b + (p_ & (0 - static_cast<u64>(a < b))); }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept
    {
        u128 x = static_cast<u128>(a) * b;
        return goldilocks_ ? reduce_goldilocks(x) : static_cast<u64>(x % p_);
    }
    Elem reduce_wide(u128 x) const noexcept { return goldilocks_ ? reduce_goldilocks(x) : static_cast<u64>(x % p_); }
    Elem pow(Elem a, u64 e) const noexcept;
    // Throws FieldError on zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    // Largest v with 2^v | p - 1.
    unsigned two_adicity() const noexcept { return two_adicity_; }
    // Element of multiplicative order exactly 2^log_n; requires log_n <= two_adicity().
    Elem root_of_unity(unsigned log_n) const;

    bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

    static Elem mul_goldilocks(Elem a, Elem b) noexcept { return reduce_goldilocks(static_cast<u128>(a) * b); }

  private:
    static Elem reduce_goldilocks(u128 x) noexcept
    {
        // 2^64 = 2^32 - 1 and 2^96 = -1 (mod p).
        u64 lo = static_cast<u64>(x);
        u64 hi = static_cast<u64>(x >> 64);
        u64 hi_hi = hi >> 32;
        u64 hi_lo = hi & 0xFFFFFFFFULL;
        u64 t0 = lo - hi_hi;
        t0 -= 0xFFFFFFFFULL & (0 - static_cast<u64>(lo < hi_hi));  // borrow: add p == subtract (2^32 - 1)
        u64 t1 = hi_lo * 0xFFFFFFFFULL;
        u64 r = t0 + t1;
        r += 0xFFFFFFFFULL & (0 - static_cast<u64>(r < t0));  // carry
        return r - (kGoldilocks & (0 - static_cast<u64>(r >= kGoldilocks)));
    }

    u64 p_;
    bool goldilocks_;
    unsigned two_adicity_;
    Elem two_adic_generator_ = 0;
};

}  // namespace mcrec
