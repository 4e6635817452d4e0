#pragma once

#include <random>
#include <vector>

#include "mcrec/field.hpp"
#include "mcrec/poly.hpp"

namespace mcrec::testing {

inline Elem random_elem(const PrimeField& F, std::mt19937_64& rng)
{
    return std::uniform_int_distribution<u64>(0, F.modulus() - 1)(rng);
}

// Uniform coefficients for X^0..X^deg (may come out with lower degree).
inline Poly random_poly(const PrimeField& F, int deg, std::mt19937_64& rng)
{
    if (deg < 0) return {};
    std::vector<Elem> c(deg + 1);
    for (auto& x : c) x = random_elem(F, rng);
    return Poly(std::move(c));
}

// O(d^2) product written independently of the library code paths.
inline Poly oracle_mul(const PrimeField& F, const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Elem> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<Elem>((static_cast<u128>(a[i]) * b[j] + r[i + j]) % F.modulus());
    return Poly(std::move(r));
}

// Enumerate all polynomials of degree < k over a small field.
inline std::vector<Poly> all_polys(const PrimeField& F, std::size_t k)
{
    std::vector<Poly> out;
    std::vector<Elem> c(k, 0);
    const u64 p = F.modulus();
    while (true) {
        out.emplace_back(c);
        std::size_t i = 0;
        while (i < k && ++c[i] == p) c[i++] = 0;
        if (i == k) break;
    }
    return out;
}

// Rank by plain Gaussian elimination (rows are consumed).
inline std::size_t rank_of(const PrimeField& F, std::vector<std::vector<Elem>> rows)
{
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        Elem inv = F.inv(rows[rank][c]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            Elem f = F.mul(rows[r][c], inv);
            for (std::size_t t = c; t < cols; ++t) rows[r][t] = F.sub(rows[r][t], F.mul(f, rows[rank][t]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace mcrec::testing
