#include "mcrec/field.hpp"

namespace mcrec {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m)
{
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // deterministic witness set for 64-bit inputs
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(u64 modulus) : p_(modulus), goldilocks_(modulus == kGoldilocks), two_adicity_(0)
{
    if (!is_prime(modulus)) throw FieldError("modulus " + std::to_string(modulus) + " is not prime");
    if (p_ == 2) return;
    u64 odd = p_ - 1;
    while ((odd & 1) == 0) {
        odd >>= 1;
        ++two_adicity_;
    }
    // z = g^odd for a non-residue g has order exactly 2^two_adicity_.
    for (u64 g = 2; g < p_; ++g) {
        if (powmod(g, (p_ - 1) / 2, p_) == p_ - 1) {
            two_adic_generator_ = powmod(g, odd, p_);
            break;
        }
    }
}

Elem PrimeField::from_signed(std::int64_t x) const noexcept
{
    if (x >= 0) return reduce(static_cast<u64>(x));
    u64 m = static_cast<u64>(-(x + 1)) + 1;
    return neg(reduce(m));
}

Elem PrimeField::pow(Elem a, u64 e) const noexcept
{
    Elem r = 1 % p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elem PrimeField::inv(Elem a) const
{
    if (a == 0) throw FieldError("division by zero in field");
    return pow(a, p_ - 2);
}

Elem PrimeField::root_of_unity(unsigned log_n) const
{
    if (log_n > two_adicity_) throw FieldError("field has no root of unity of order 2^" + std::to_string(log_n));
    Elem z = two_adic_generator_;
    for (unsigned i = log_n; i < two_adicity_; ++i) z = mul(z, z);
    return z;
}

}  // namespace mcrec
