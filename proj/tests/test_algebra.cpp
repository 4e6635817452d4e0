#include <doctest.h>

#include "mcrec/poly.hpp"
#include "support.hpp"

using namespace mcrec;
using mcrec::testing::oracle_mul;
using mcrec::testing::random_elem;
using mcrec::testing::random_poly;

TEST_CASE("field ops over F_7")
{
    PrimeField F(7);
    CHECK(F.add(3, 5) == 1);
    CHECK(F.inv(3) == 5);
    CHECK(F.mul(3, 5) == 1);
    CHECK(F.neg(0) == 0);
    CHECK(F.sub(2, 5) == 4);
    CHECK_THROWS_WITH_AS(F.inv(0), "division by zero in field", FieldError);
    CHECK_THROWS_AS(PrimeField(15), FieldError);
}

TEST_CASE("goldilocks reduction agrees with generic modular arithmetic")
{
    PrimeField F(kGoldilocks);
    REQUIRE(F.is_goldilocks());
    CHECK(F.two_adicity() == 32);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20000; ++i) {
        Elem a = random_elem(F, rng), b = random_elem(F, rng);
        Elem expect = static_cast<Elem>(static_cast<u128>(a) * b % kGoldilocks);
        REQUIRE(F.mul(a, b) == expect);
        REQUIRE(F.add(a, b) == static_cast<Elem>((static_cast<u128>(a) + b) % kGoldilocks));
    }
    for (Elem a : {kGoldilocks - 1, kGoldilocks - 2, Elem{0xFFFFFFFF}, Elem{1} << 63}) {
        CHECK(F.mul(a, a) == static_cast<Elem>(static_cast<u128>(a) * a % kGoldilocks));
        CHECK(F.mul(a, F.inv(a)) == 1);
    }
    Elem w = F.root_of_unity(10);
    CHECK(F.pow(w, 1024) == 1);
    CHECK(F.pow(w, 512) != 1);
}

TEST_CASE("poly_mul examples")
{
    PrimeField F(7);
    CHECK(mul(F, Poly{1, 1}, Poly{1, 1}) == Poly{1, 2, 1});
    CHECK(mul(F, Poly{3, 1}, Poly{4, 1}) == Poly{5, 0, 1});
    CHECK(mul(F, Poly{3, 1}, Poly{}).is_zero());
    CHECK(Poly{0, 0}.is_zero());
    CHECK(Poly{}.degree() == kZeroDegree);
}

TEST_CASE("multiplication strategies agree with the schoolbook oracle")
{
    std::mt19937_64 rng(7);
    for (u64 p : {u64{13}, u64{1000003}, kGoldilocks}) {
        PrimeField F(p);
        for (int trial = 0; trial < 40; ++trial) {
            int da = static_cast<int>(rng() % 257), db = static_cast<int>(rng() % 257);
            Poly a = random_poly(F, da, rng), b = random_poly(F, db, rng), c = random_poly(F, db, rng);
            Poly expect = oracle_mul(F, a, b);
            REQUIRE(mul(F, a, b) == expect);
            REQUIRE(mul_karatsuba(F, a, b) == expect);
            if (ntt_supported(F, a.size() + b.size())) REQUIRE(mul_ntt(F, a, b) == expect);
            // distributivity
            REQUIRE(mul(F, add(F, a, c), b) == add(F, mul(F, a, b), mul(F, c, b)));
        }
    }
}

TEST_CASE("poly_divrem examples and round trip")
{
    PrimeField F(7);
    auto [q, r] = divrem(F, Poly{5, 0, 1}, Poly{3, 1});
    CHECK(q == Poly{4, 1});
    CHECK(r.is_zero());
    Poly a{1, 2, 3};
    CHECK(divrem(F, a, Poly{1}).first == a);
    CHECK(divrem(F, a, Poly{1}).second.is_zero());
    auto [q2, r2] = divrem(F, Poly{0, 1}, Poly{0, 0, 1});
    CHECK(q2.is_zero());
    CHECK(r2 == Poly{0, 1});
    CHECK_THROWS_WITH_AS(divrem(F, a, Poly{}), "division by zero polynomial", PolyError);

    std::mt19937_64 rng(3);
    for (u64 p : {u64{7}, kGoldilocks}) {
        PrimeField G(p);
        for (int t = 0; t < 60; ++t) {
            Poly x = random_poly(G, static_cast<int>(rng() % 600), rng);
            Poly y = random_poly(G, static_cast<int>(rng() % 300), rng);
            if (y.is_zero()) continue;
            auto [qq, rr] = divrem(G, x, y);
            REQUIRE(add(G, oracle_mul(G, qq, y), rr) == x);
            REQUIRE(rr.degree() < y.degree());
            Reducer red(G, y);
            REQUIRE(red.reduce(x) == rr);
        }
    }
}

TEST_CASE("derivatives")
{
    PrimeField F(7);
    CHECK(derivative(F, Poly{0, 0, 0, 1}) == Poly{0, 0, 3});
    CHECK(derivative(F, Poly{1, 2, 3}, 0) == Poly{1, 2, 3});
    CHECK(derivative(F, Poly{0, 5, 1}, 2) == Poly{2});
    // characteristic kills X^7 derivatives
    CHECK(derivative(F, Poly::monomial(1, 7)).is_zero());
}

TEST_CASE("eval_derivs")
{
    PrimeField F(7);
    CHECK(eval_derivs(F, Poly{0, 0, 1}, 2, 3) == std::vector<Elem>{4, 4, 2});
    CHECK(eval_derivs(F, Poly{}, 3, 3) == std::vector<Elem>{0, 0, 0});
    CHECK(eval_derivs(F, Poly{0, 0, 1}, 0, 3) == std::vector<Elem>{0, 0, 2});

    std::mt19937_64 rng(11);
    PrimeField G(kGoldilocks);
    for (int t = 0; t < 20; ++t) {
        Poly a = random_poly(G, 40, rng);
        Elem x = random_elem(G, rng);
        auto v = eval_derivs(G, a, x, 8);
        for (std::size_t j = 0; j < 8; ++j) REQUIRE(v[j] == eval(G, derivative(G, a, j), x));
    }
}

TEST_CASE("crt_pair")
{
    PrimeField F(7);
    CHECK(crt_pair(F, Poly{1}, Poly{0, 1}, Poly{}, Poly{6, 1}) == Poly{1, 6});
    Poly v{3, 4, 5}, m{1, 0, 0, 1};
    CHECK(crt_pair(F, v, m, Poly{}, Poly{1}) == mod(F, v, m));
    CHECK(crt_pair(F, Poly{4}, Poly{0, 1}, Poly{4}, Poly{1, 1}) == Poly{4});
    CHECK_THROWS_WITH_AS(crt_pair(F, Poly{1}, Poly{0, 1}, Poly{2}, Poly{0, 1}), "moduli not coprime", PolyError);

    std::mt19937_64 rng(5);
    PrimeField G(kGoldilocks);
    for (int t = 0; t < 20; ++t) {
        Poly m1 = product_of_linear_powers(G, std::vector<Elem>{1, 2, 3}, 4);
        Poly m2 = product_of_linear_powers(G, std::vector<Elem>{5, 9}, 3);
        Poly v1 = random_poly(G, 11, rng), v2 = random_poly(G, 5, rng);
        Poly f = crt_pair(G, v1, m1, v2, m2);
        REQUIRE(f.degree() < m1.degree() + m2.degree());
        REQUIRE(mod(G, f, m1) == v1);
        REQUIRE(mod(G, f, m2) == v2);
    }
}

TEST_CASE("invmod")
{
    PrimeField F(7);
    CHECK(invmod(F, Poly{1, 1}, Poly{0, 1}) == Poly{1});
    CHECK(invmod(F, Poly{1}, Poly{1, 2, 3}) == Poly{1});
    CHECK(invmod(F, Poly{0, 1}, Poly{1, 1}) == Poly{6});
    CHECK_THROWS_WITH_AS(invmod(F, Poly{0, 1}, Poly{0, 0, 1}), "not invertible modulo m", PolyError);
}

TEST_CASE("taylor_at")
{
    PrimeField F(7);
    CHECK(taylor_at(F, 1, std::vector<Elem>{2, 3}) == Poly{6, 3});
    CHECK(taylor_at(F, 4, std::vector<Elem>{0, 0, 0}).is_zero());
    CHECK(taylor_at(F, 0, std::vector<Elem>{5}) == Poly{5});
    CHECK_THROWS_WITH_AS(taylor_at(F, 0, std::vector<Elem>(8, 1)), "factorial not invertible", PolyError);

    std::mt19937_64 rng(9);
    PrimeField G(kGoldilocks);
    for (std::size_t d : {1u, 5u, 70u, 200u}) {
        std::vector<Elem> vals(d);
        for (auto& v : vals) v = random_elem(G, rng);
        Elem alpha = random_elem(G, rng);
        Poly c = taylor_at(G, alpha, vals);
        REQUIRE(c.degree() < static_cast<int>(d));
        REQUIRE(eval_derivs(G, c, alpha, d) == vals);
    }
}

TEST_CASE("taylor_shift matches naive composition")
{
    std::mt19937_64 rng(13);
    PrimeField G(kGoldilocks);
    Poly a = random_poly(G, 150, rng);
    Elem x = random_elem(G, rng);
    Poly shifted = taylor_shift(G, a, x);
    for (int t = 0; t < 5; ++t) {
        Elem y = random_elem(G, rng);
        REQUIRE(eval(G, shifted, y) == eval(G, a, G.add(y, x)));
    }
}

TEST_CASE("series inverse")
{
    std::mt19937_64 rng(17);
    PrimeField G(kGoldilocks);
    Poly a = random_poly(G, 300, rng);
    Poly g = series_inverse(G, a, 500);
    CHECK(truncate(mul(G, a, g), 500) == Poly{1});
}

TEST_CASE("mat_mul agrees with entrywise oracle products")
{
    std::mt19937_64 rng(17);
    for (u64 p : {u64{13}, kGoldilocks}) {
        PrimeField F(p);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4, d = 1 + rng() % 4;
            int da = static_cast<int>(rng() % 80), db = static_cast<int>(rng() % 600);
            if (trial % 2) std::swap(da, db);
            PolyMatrix A(r, std::vector<Poly>(c)), B(c, std::vector<Poly>(d));
            for (auto& row : A)
                for (auto& e : row) e = rng() % 5 ? mcrec::testing::random_poly(F, static_cast<int>(rng() % (da + 1)), rng) : Poly{};
            for (auto& row : B)
                for (auto& e : row) e = rng() % 5 ? mcrec::testing::random_poly(F, static_cast<int>(rng() % (db + 1)), rng) : Poly{};
            PolyMatrix C = mat_mul(F, A, B);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    Poly want;
                    for (std::size_t t = 0; t < c; ++t) want = add(F, want, mcrec::testing::oracle_mul(F, A[i][t], B[t][j]));
                    REQUIRE(C[i][j] == want);
                }
        }
    }
}
