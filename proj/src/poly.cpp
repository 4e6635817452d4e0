#include "mcrec/poly.hpp"

#include <algorithm>
#include <bit>

namespace mcrec {

Poly Poly::monomial(Elem c, std::size_t d)
{
    if (c == 0) return {};
    std::vector<Elem> v(d + 1, 0);
    v[d] = c;
    return Poly(std::move(v));
}

Poly add(const PrimeField& F, const Poly& a, const Poly& b)
{
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Elem> r(std::max(x.size(), y.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(i < x.size() ? x[i] : 0, i < y.size() ? y[i] : 0);
    return Poly(std::move(r));
}

Poly sub(const PrimeField& F, const Poly& a, const Poly& b)
{
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Elem> r(std::max(x.size(), y.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(i < x.size() ? x[i] : 0, i < y.size() ? y[i] : 0);
    return Poly(std::move(r));
}

Poly neg(const PrimeField& F, const Poly& a)
{
    std::vector<Elem> r(a.coeffs());
    for (auto& c : r) c = F.neg(c);
    return Poly(std::move(r));
}

Poly scale(const PrimeField& F, const Poly& a, Elem c)
{
    if (c == 0) return {};
    std::vector<Elem> r(a.coeffs());
    for (auto& x : r) x = F.mul(x, c);
    return Poly(std::move(r));
}

Poly shift_up(const Poly& a, std::size_t k)
{
    if (a.is_zero()) return {};
    std::vector<Elem> r(k, 0);
    r.insert(r.end(), a.coeffs().begin(), a.coeffs().end());
    return Poly(std::move(r));
}

Poly slice(const Poly& a, std::size_t lo, std::size_t hi)
{
    hi = std::min(hi, a.size());
    if (lo >= hi) return {};
    return Poly(std::vector<Elem>(a.coeffs().begin() + lo, a.coeffs().begin() + hi));
}

Poly truncate(const Poly& a, std::size_t k) { return slice(a, 0, k); }

// ---------------------------------------------------------------- multiplication

Poly mul_schoolbook(const PrimeField& F, const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Elem> r(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(x[i], y[j]));
    }
    return Poly(std::move(r));
}

namespace {

void karatsuba_rec(const PrimeField& F, const Elem* x, const Elem* y, std::size_t n, Elem* out)
{
    // out has 2n - 1 slots, zero on entry
    if (n <= kMulCrossover) {
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i + j] = F.add(out[i + j], F.mul(x[i], y[j]));
        }
        return;
    }
    std::size_t h = n / 2, hh = n - h;
    std::vector<Elem> sx(hh), sy(hh);
    for (std::size_t i = 0; i < hh; ++i) {
        sx[i] = F.add(i < h ? x[i] : 0, x[h + i]);
        sy[i] = F.add(i < h ? y[i] : 0, y[h + i]);
    }
    std::vector<Elem> low(2 * h - 1, 0), high(2 * hh - 1, 0), mid(2 * hh - 1, 0);
    karatsuba_rec(F, x, y, h, low.data());
    karatsuba_rec(F, x + h, y + h, hh, high.data());
    karatsuba_rec(F, sx.data(), sy.data(), hh, mid.data());
    for (std::size_t i = 0; i < low.size(); ++i) {
        out[i] = F.add(out[i], low[i]);
        mid[i] = F.sub(mid[i], low[i]);
    }
    for (std::size_t i = 0; i < high.size(); ++i) {
        out[2 * h + i] = F.add(out[2 * h + i], high[i]);
        mid[i] = F.sub(mid[i], high[i]);
    }
    for (std::size_t i = 0; i < mid.size(); ++i) out[h + i] = F.add(out[h + i], mid[i]);
}

// Stage twiddles: entries [h-1, 2h-1) hold w^0 .. w^(h-1) for w of order 2h.
// The layout does not depend on the transform length, so one table per field
// and direction serves every size up to the largest seen.
const std::vector<Elem>& twiddles(const PrimeField& F, std::size_t n, bool inverse)
{
    struct Entry {
        u64 p;
        std::vector<Elem> tw[2];
    };
    thread_local std::vector<Entry> cache;
    Entry* e = nullptr;
    for (auto& c : cache)
        if (c.p == F.modulus()) e = &c;
    if (!e) {
        cache.push_back({F.modulus(), {}});
        e = &cache.back();
    }
    std::vector<Elem>& t = e->tw[inverse ? 1 : 0];
    if (t.size() + 1 < n) {
        t.assign(n - 1, 0);
        for (std::size_t h = 1; h < n; h <<= 1) {
            Elem w = F.root_of_unity(static_cast<unsigned>(std::countr_zero(2 * h)));
            if (inverse) w = F.inv(w);
            Elem x = 1;
            for (std::size_t j = 0; j < h; ++j, x = F.mul(x, w)) t[h - 1 + j] = x;
        }
    }
    return t;
}

template <class Mul>
void butterflies(const PrimeField& F, Elem* a, std::size_t n, const Elem* tw, Mul mul)
{
    for (std::size_t half = 1; half < n; half <<= 1) {
        const Elem* w = tw + half - 1;
        for (std::size_t i = 0; i < n; i += 2 * half) {
            Elem* x = a + i;
            Elem* y = x + half;
            for (std::size_t j = 0; j < half; ++j) {
                Elem u = x[j];
                Elem v = mul(y[j], w[j]);
                x[j] = F.add(u, v);
                y[j] = F.sub(u, v);
            }
        }
    }
}

void ntt_inplace(const PrimeField& F, std::vector<Elem>& a, bool inverse)
{
    const std::size_t n = a.size();
    if (n <= 1) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const Elem* tw = twiddles(F, n, inverse).data();
    if (F.is_goldilocks())
        butterflies(F, a.data(), n, tw, [](Elem x, Elem y) { return PrimeField::mul_goldilocks(x, y); });
    else
        butterflies(F, a.data(), n, tw, [&F](Elem x, Elem y) { return F.mul(x, y); });
    if (inverse) {
        Elem n_inv = F.inv(F.reduce(n));
        for (auto& x : a) x = F.mul(x, n_inv);
    }
}

}  // namespace

void ntt(const PrimeField& F, std::vector<Elem>& a, bool inverse)
{
    if (!std::has_single_bit(a.size()) || !ntt_supported(F, a.size()))
        throw PolyError("field does not support NTT of this length");
    ntt_inplace(F, a, inverse);
}

Poly mul_karatsuba(const PrimeField& F, const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::size_t n = std::max(a.size(), b.size());
    std::vector<Elem> x(a.coeffs()), y(b.coeffs());
    x.resize(n, 0);
    y.resize(n, 0);
    std::vector<Elem> out(2 * n - 1, 0);
    karatsuba_rec(F, x.data(), y.data(), n, out.data());
    return Poly(std::move(out));
}

bool ntt_supported(const PrimeField& F, std::size_t result_size)
{
    std::size_t n = std::bit_ceil(std::max<std::size_t>(result_size, 1));
    return static_cast<unsigned>(std::countr_zero(n)) <= F.two_adicity() && n < F.modulus();
}

Poly mul_ntt(const PrimeField& F, const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::size_t rs = a.size() + b.size() - 1;
    std::size_t n = std::bit_ceil(rs);
    if (!ntt_supported(F, rs)) throw PolyError("field does not support NTT of this length");
    std::vector<Elem> x(a.coeffs()), y(b.coeffs());
    x.resize(n, 0);
    y.resize(n, 0);
    ntt_inplace(F, x, false);
    ntt_inplace(F, y, false);
    for (std::size_t i = 0; i < n; ++i) x[i] = F.mul(x[i], y[i]);
    ntt_inplace(F, x, true);
    x.resize(rs);
    return Poly(std::move(x));
}

Poly mul(const PrimeField& F, const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::size_t small = std::min(a.size(), b.size());
    if (small <= kMulCrossover) return mul_schoolbook(F, a, b);
    if (ntt_supported(F, a.size() + b.size() - 1)) return mul_ntt(F, a, b);
    return mul_karatsuba(F, a, b);
}

// ---------------------------------------------------------------- division

Poly series_inverse(const PrimeField& F, const Poly& a, std::size_t n)
{
    if (a[0] == 0) throw PolyError("series not invertible");
    Poly g = Poly::constant(F.inv(a[0]));
    std::size_t have = 1;
    while (have < n) {
        have = std::min(2 * have, n);
        // g <- g * (2 - a g) mod X^have
        Poly ag = truncate(mul(F, truncate(a, have), g), have);
        Poly two_minus = neg(F, ag);
        std::vector<Elem> c(two_minus.coeffs());
        if (c.empty()) c.push_back(0);
        c[0] = F.add(c[0], 2 % F.modulus());
        g = truncate(mul(F, g, Poly(std::move(c))), have);
    }
    return g;
}

namespace {

Poly reversed(const Poly& a, std::size_t len)
{
    std::vector<Elem> r(len, 0);
    for (std::size_t i = 0; i < len && i < a.size(); ++i) r[len - 1 - i] = a[i];
    return Poly(std::move(r));
}

std::pair<Poly, Poly> divrem_naive(const PrimeField& F, const Poly& a, const Poly& b)
{
    std::vector<Elem> r(a.coeffs());
    const auto& d = b.coeffs();
    std::size_t db = d.size() - 1;
    std::vector<Elem> q(r.size() - db, 0);
    Elem lead_inv = F.inv(d.back());
    for (std::size_t i = r.size(); i-- > db;) {
        Elem c = F.mul(r[i], lead_inv);
        q[i - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, d[j]));
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
}

bool use_fast_division(const PrimeField& F, std::size_t a_size, std::size_t b_size)
{
    std::size_t qlen = a_size - b_size + 1;
    return qlen > 64 && b_size > 64 && ntt_supported(F, 2 * a_size);
}

Poly quotient_via_reciprocal(const PrimeField& F, const Poly& a, std::size_t b_size, const Poly& rev_inv)
{
    std::size_t qlen = a.size() - b_size + 1;
    Poly ra = truncate(reversed(a, a.size()), qlen);
    Poly rq = truncate(mul(F, ra, truncate(rev_inv, qlen)), qlen);
    return reversed(rq, qlen);
}

}  // namespace

std::pair<Poly, Poly> divrem(const PrimeField& F, const Poly& a, const Poly& b)
{
    if (b.is_zero()) throw PolyError("division by zero polynomial");
    if (a.size() < b.size()) return {Poly{}, a};
    if (!use_fast_division(F, a.size(), b.size())) return divrem_naive(F, a, b);
    std::size_t qlen = a.size() - b.size() + 1;
    Poly rev_inv = series_inverse(F, reversed(b, b.size()), qlen);
    Poly q = quotient_via_reciprocal(F, a, b.size(), rev_inv);
    Poly r = truncate(sub(F, a, mul(F, q, b)), b.size() - 1);
    return {std::move(q), std::move(r)};
}

Poly mod(const PrimeField& F, const Poly& a, const Poly& b) { return divrem(F, a, b).second; }

Reducer::Reducer(const PrimeField& F, Poly modulus) : F_(&F), m_(std::move(modulus))
{
    if (m_.is_zero()) throw PolyError("division by zero polynomial");
    inv_len_ = m_.size();
    if (ntt_supported(F, 4 * m_.size())) rev_inv_ = series_inverse(F, reversed(m_, m_.size()), inv_len_);
}

Poly Reducer::reduce(const Poly& a) const
{
    if (a.size() < m_.size()) return a;
    std::size_t qlen = a.size() - m_.size() + 1;
    if (rev_inv_.is_zero() || qlen > inv_len_ || qlen <= 64 || m_.size() <= 64) return mod(*F_, a, m_);
    Poly q = quotient_via_reciprocal(*F_, a, m_.size(), rev_inv_);
    return truncate(sub(*F_, a, mul(*F_, q, m_)), m_.size() - 1);
}

// ---------------------------------------------------------------- derivatives

Elem eval(const PrimeField& F, const Poly& a, Elem x)
{
    Elem r = 0;
    const auto& c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) r = F.add(F.mul(r, x), c[i]);
    return r;
}

Poly derivative(const PrimeField& F, const Poly& a, std::size_t order)
{
    if (order == 0) return a;
    if (a.size() <= order) return {};
    std::vector<Elem> r(a.size() - order);
    for (std::size_t i = order; i < a.size(); ++i) {
        Elem ff = 1;
        for (std::size_t t = 0; t < order; ++t) ff = F.mul(ff, F.reduce(i - t));
        r[i - order] = F.mul(ff, a[i]);
    }
    return Poly(std::move(r));
}

std::vector<Elem> eval_derivs(const PrimeField& F, const Poly& a, Elem x, std::size_t count)
{
    // Repeated synthetic division by (X - x) yields the Taylor coefficients.
    std::vector<Elem> out(count, 0);
    std::vector<Elem> c(a.coeffs());
    Elem fact = 1;
    for (std::size_t j = 0; j < count && !c.empty(); ++j) {
        if (j > 0) fact = F.mul(fact, F.reduce(j));
        Elem carry = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            carry = F.add(F.mul(carry, x), c[i]);
            c[i] = carry;
        }
        // c[0] is the remainder; the quotient sits in c[1..]
        out[j] = F.mul(c[0], fact);
        c.erase(c.begin());
    }
    return out;
}

Poly taylor_shift(const PrimeField& F, const Poly& a, Elem x)
{
    if (a.is_zero() || x == 0) return a;
    const std::size_t n = a.size();
    if (n <= 64 || n > F.modulus() - 1) {
        std::vector<Elem> c(a.coeffs());
        for (std::size_t k = 0; k + 1 < n; ++k)
            for (std::size_t i = n - 1; i > k; --i) c[i - 1] = F.add(c[i - 1], F.mul(x, c[i]));
        return Poly(std::move(c));
    }
    // b_j j! = sum_t (a_{j+t} (j+t)!) (x^t / t!)
    std::vector<Elem> fact(n), inv_fact(n);
    fact[0] = 1;
    for (std::size_t i = 1; i < n; ++i) fact[i] = F.mul(fact[i - 1], F.reduce(i));
    inv_fact[n - 1] = F.inv(fact[n - 1]);
    for (std::size_t i = n - 1; i > 0; --i) inv_fact[i - 1] = F.mul(inv_fact[i], F.reduce(i));
    std::vector<Elem> u(n), v(n);
    Elem xp = 1;
    for (std::size_t i = 0; i < n; ++i) {
        u[n - 1 - i] = F.mul(a[i], fact[i]);
        v[i] = F.mul(xp, inv_fact[i]);
        xp = F.mul(xp, x);
    }
    Poly c = mul(F, Poly(std::move(u)), Poly(std::move(v)));
    std::vector<Elem> b(n);
    for (std::size_t j = 0; j < n; ++j) b[j] = F.mul(c[n - 1 - j], inv_fact[j]);
    return Poly(std::move(b));
}

// ---------------------------------------------------------------- gcd / crt

XgcdResult xgcd(const PrimeField& F, const Poly& a, const Poly& b)
{
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(1), s1{};
    Poly t0{}, t1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(F, r0, r1);
        r0 = std::exchange(r1, std::move(r));
        s0 = std::exchange(s1, sub(F, s0, mul(F, q, s1)));
        t0 = std::exchange(t1, sub(F, t0, mul(F, q, t1)));
    }
    if (!r0.is_zero()) {
        Elem li = F.inv(r0.leading());
        r0 = scale(F, r0, li);
        s0 = scale(F, s0, li);
        t0 = scale(F, t0, li);
    }
    return {std::move(r0), std::move(s0), std::move(t0)};
}

Poly invmod(const PrimeField& F, const Poly& a, const Poly& m)
{
    if (m.is_zero()) throw PolyError("division by zero polynomial");
    if (m.degree() == 0) return {};
    Poly ar = mod(F, a, m);
    auto g = xgcd(F, ar, m);
    if (g.g.degree() != 0) throw PolyError("not invertible modulo m");
    return mod(F, g.s, m);
}

Poly crt_pair_with_inverse(const PrimeField& F, const Poly& v1, const Poly& m1, const Poly& v2, const Poly& m2,
                           const Poly& m1_inv_mod_m2)
{
    Poly r1 = mod(F, v1, m1);
    Poly r2 = mod(F, v2, m2);
    Poly h = mod(F, mul(F, sub(F, r2, r1), m1_inv_mod_m2), m2);
    return add(F, r1, mul(F, m1, h));
}

Poly crt_pair(const PrimeField& F, const Poly& v1, const Poly& m1, const Poly& v2, const Poly& m2)
{
    Poly inv;
    try {
        inv = invmod(F, m1, m2);
    } catch (const PolyError&) {
        throw PolyError("moduli not coprime");
    }
    return crt_pair_with_inverse(F, v1, m1, v2, m2, inv);
}

// ---------------------------------------------------------------- constructions

Poly taylor_at(const PrimeField& F, Elem alpha, std::span<const Elem> values)
{
    if (values.size() > F.modulus()) throw PolyError("factorial not invertible");
    std::vector<Elem> c(values.size());
    Elem inv_fact = 1;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (j > 0) inv_fact = F.mul(inv_fact, F.inv(F.reduce(j)));
        c[j] = F.mul(values[j], inv_fact);
    }
    return taylor_shift(F, Poly(std::move(c)), F.neg(alpha));
}

Poly linear_power(const PrimeField& F, Elem alpha, std::size_t e)
{
    if (alpha == 0) return Poly::monomial(1, e);
    Poly base{F.neg(alpha), 1};
    Poly r = Poly::constant(1);
    while (e) {
        if (e & 1) r = mul(F, r, base);
        e >>= 1;
        if (e) base = mul(F, base, base);
    }
    return r;
}

Poly product_of_linear_powers(const PrimeField& F, std::span<const Elem> roots, std::size_t e)
{
    if (roots.empty()) return Poly::constant(1);
    if (roots.size() == 1) return linear_power(F, roots[0], e);
    std::size_t h = roots.size() / 2;
    return mul(F, product_of_linear_powers(F, roots.subspan(0, h), e), product_of_linear_powers(F, roots.subspan(h), e));
}

// ---------------------------------------------------------------- matrices

namespace {

PolyMatrix transposed(const PolyMatrix& A)
{
    if (A.empty()) return {};
    PolyMatrix T(A.front().size(), std::vector<Poly>(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
    return T;
}

PolyMatrix mat_mul_schoolbook(const PrimeField& F, const PolyMatrix& A, const PolyMatrix& B, std::size_t rs)
{
    const std::size_t rows = A.size(), inner = B.size(), cols = B.front().size();
    PolyMatrix C(rows, std::vector<Poly>(cols));
    std::vector<Elem> acc(rs);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t t = 0; t < inner; ++t) {
                const auto& x = A[i][t].coeffs();
                const auto& y = B[t][j].coeffs();
                for (std::size_t u = 0; u < x.size(); ++u) {
                    if (x[u] == 0) continue;
                    for (std::size_t v = 0; v < y.size(); ++v) acc[u + v] = F.add(acc[u + v], F.mul(x[u], y[v]));
                }
            }
            C[i][j] = Poly(acc);
        }
    return C;
}

// B holds the longer entries; it is cut into blocks as long as A's entries
// and each block product is overlap-added, so A is transformed only once.
PolyMatrix mat_mul_ntt(const PrimeField& F, const PolyMatrix& A, const PolyMatrix& B, std::size_t la, std::size_t lb)
{
    const std::size_t rows = A.size(), inner = B.size(), cols = B.front().size();
    std::size_t block = std::bit_ceil(la);
    std::size_t n = 2 * block;
    if (lb <= block) {
        block = lb;
        n = std::bit_ceil(la + lb - 1);
    }
    const std::size_t nb = (lb + block - 1) / block;
    auto transform = [&](const Elem* c, std::size_t len) {
        std::vector<Elem> v(n, 0);
        std::copy(c, c + len, v.begin());
        if (len) ntt_inplace(F, v, false);
        return v;
    };
    std::vector<std::vector<std::vector<Elem>>> ta(rows, std::vector<std::vector<Elem>>(inner));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t t = 0; t < inner; ++t) {
            const auto& c = A[i][t].coeffs();
            if (!c.empty()) ta[i][t] = transform(c.data(), c.size());
        }
    std::vector<std::vector<std::vector<Elem>>> out(rows, std::vector<std::vector<Elem>>(cols));
    std::vector<std::vector<Elem>> tb(inner);
    std::vector<u128> acc(n);
    std::vector<Elem> prod(n);
    for (std::size_t b = 0; b < nb; ++b) {
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t t = 0; t < inner; ++t) {
                const auto& c = B[t][j].coeffs();
                std::size_t lo = std::min(c.size(), b * block), hi = std::min(c.size(), (b + 1) * block);
                tb[t] = hi > lo ? transform(c.data() + lo, hi - lo) : std::vector<Elem>{};
            }
            for (std::size_t i = 0; i < rows; ++i) {
                bool any = false;
                std::fill(acc.begin(), acc.end(), 0);
                for (std::size_t t = 0; t < inner; ++t) {
                    if (ta[i][t].empty() || tb[t].empty()) continue;
                    any = true;
                    const Elem* x = ta[i][t].data();
                    const Elem* y = tb[t].data();
                    for (std::size_t e = 0; e < n; ++e) acc[e] += F.mul(x[e], y[e]);
                }
                if (!any) continue;
                for (std::size_t e = 0; e < n; ++e) prod[e] = F.reduce_wide(acc[e]);
                ntt_inplace(F, prod, true);
                auto& o = out[i][j];
                std::size_t need = std::min(b * block + n, b * block + la + block - 1);
                if (o.size() < need) o.resize(need, 0);
                for (std::size_t e = 0; b * block + e < need; ++e) o[b * block + e] = F.add(o[b * block + e], prod[e]);
            }
        }
    }
    PolyMatrix C(rows, std::vector<Poly>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) C[i][j] = Poly(std::move(out[i][j]));
    return C;
}

}  // namespace

PolyMatrix mat_mul(const PrimeField& F, const PolyMatrix& A, const PolyMatrix& B)
{
    const std::size_t rows = A.size(), inner = B.size(), cols = inner ? B.front().size() : 0;
    if (rows == 0 || cols == 0) return PolyMatrix(rows, std::vector<Poly>(cols));
    int da = kZeroDegree, db = kZeroDegree;
    for (const auto& r : A) {
        if (r.size() != inner) throw PolyError("matrix dimensions do not match");
        for (const auto& p : r) da = std::max(da, p.degree());
    }
    for (const auto& r : B) {
        if (r.size() != cols) throw PolyError("matrix not rectangular");
        for (const auto& p : r) db = std::max(db, p.degree());
    }
    if (da < 0 || db < 0) return PolyMatrix(rows, std::vector<Poly>(cols));
    const std::size_t la = static_cast<std::size_t>(da) + 1, lb = static_cast<std::size_t>(db) + 1;
    if (std::min(la, lb) <= kMatMulCrossover || !ntt_supported(F, 2 * std::bit_ceil(la + lb)))
        return mat_mul_schoolbook(F, A, B, la + lb - 1);
    if (la > lb) return transposed(mat_mul_ntt(F, transposed(B), transposed(A), lb, la));
    return mat_mul_ntt(F, A, B, la, lb);
}

}  // namespace mcrec
