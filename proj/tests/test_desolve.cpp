#include <doctest.h>

#include <functional>

#include "mcrec/desolve.hpp"
#include "support.hpp"

using namespace mcrec;
using mcrec::testing::all_polys;
using mcrec::testing::oracle_mul;
using mcrec::testing::random_elem;
using mcrec::testing::random_poly;

namespace {

Poly oracle_derivative(const PrimeField& F, const Poly& f)
{
    std::vector<Elem> c;
    for (std::size_t i = 1; i < f.size(); ++i) c.push_back(static_cast<Elem>((static_cast<u128>(i) * f[i]) % F.modulus()));
    return Poly(std::move(c));
}

Poly oracle_add(const PrimeField& F, const Poly& a, const Poly& b)
{
    std::vector<Elem> c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + static_cast<u128>(b[i])) % F.modulus();
    return Poly(std::move(c));
}

// Q~ + sum Q_i f^(i), written without the library's polynomial routines.
Poly oracle_apply(const PrimeField& F, const DiffForm& q, Poly f)
{
    Poly acc = q.free_part();
    for (std::size_t i = 0; i <= q.m(); ++i) {
        acc = oracle_add(F, acc, oracle_mul(F, q.y(i), f));
        f = oracle_derivative(F, f);
    }
    return acc;
}

Poly oracle_neg(const PrimeField& F, const Poly& a)
{
    std::vector<Elem> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] == 0 ? 0 : F.modulus() - a[i];
    return Poly(std::move(c));
}

// Random Y-linear q; with `plant`, Q~ is chosen so that f0 solves it.
DiffForm random_equation(const PrimeField& F, std::size_t m, int deg, std::size_t k, bool plant, std::mt19937_64& rng,
                         bool top_vanishes_at_zero = false)
{
    DiffForm q(m);
    for (std::size_t i = 0; i <= m; ++i) q.y(i) = random_poly(F, deg, rng);
    if (top_vanishes_at_zero) q.y(m) = oracle_mul(F, q.y(m), Poly{0, 0, 1});
    if (plant) {
        Poly f0 = random_poly(F, static_cast<int>(k) - 1, rng);
        DiffForm hom = q;
        hom.free_part() = Poly{};
        q.free_part() = oracle_neg(F, oracle_apply(F, hom, f0));
    } else {
        q.free_part() = random_poly(F, deg, rng);
    }
    return q;
}

u64 ipow(u64 b, std::size_t e)
{
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

void check_against_enumeration(const PrimeField& F, const AffineSpace& A, const std::vector<Poly>& universe,
                               const std::function<bool(const Poly&)>& member)
{
    std::size_t count = 0;
    for (const Poly& f : universe) {
        const bool in = member(f);
        count += in;
        REQUIRE(A.contains(F, f) == in);
    }
    if (A.is_empty())
        REQUIRE(count == 0);
    else
        REQUIRE(count == ipow(F.modulus(), A.dimension()));
}

}  // namespace

TEST_CASE("solve_de examples")
{
    PrimeField F(13);
    DiffForm anti(1);
    anti.y(1) = Poly{1};
    anti.free_part() = Poly{F.neg(1)};
    AffineSpace A = solve_de(F, anti, 3);
    CHECK(A.offset == Poly{0, 1});
    CHECK(A.basis == std::vector<Poly>{Poly{1}});
    CHECK(A.dimension() == 1);

    AffineSpace zero = solve_de(F, DiffForm::y_term(0, 0, Poly{1}), 3);
    CHECK(zero.dimension() == 0);
    CHECK(zero.offset == Poly{});

    CHECK(solve_de(F, DiffForm::y_free(2, Poly{4, 1}), 3).is_empty());
    CHECK_THROWS_WITH_AS(solve_de(F, DiffForm(2), 3), "degenerate equation", ParamError);
}

TEST_CASE("solve_de equals brute force over F_13, k = 4")
{
    PrimeField F(13);
    const std::size_t k = 4;
    const auto universe = all_polys(F, k);
    std::mt19937_64 rng(31);
    std::size_t nonempty = 0, positive_dim = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 1 + trial % 2;
        DiffForm q = random_equation(F, m, static_cast<int>(rng() % 4), k, trial % 3 != 0, rng);
        if (trial % 7 == 0) q.y(m) = Poly{};  // lower actual order
        if (q.is_zero()) continue;
        AffineSpace A = solve_de(F, q, k);
        nonempty += !A.is_empty();
        positive_dim += A.dimension() > 0;
        if (q.top_y_index() >= 0) REQUIRE(A.dimension() <= m);
        check_against_enumeration(F, A, universe, [&](const Poly& f) { return oracle_apply(F, q, f).is_zero(); });
    }
    CHECK(nonempty > 20);
    CHECK(positive_dim > 0);
}

TEST_CASE("series and dense solvers agree")
{
    std::mt19937_64 rng(32);
    PrimeField F(kGoldilocks);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t m = 1 + trial % 4;
        const std::size_t k = 40 + rng() % 200;
        DiffForm q = random_equation(F, m, static_cast<int>(5 + rng() % 60), k, trial % 4 != 3, rng, trial % 3 == 0);
        AffineSpace dense = solve_de(F, q, k, DeMethod::dense);
        AffineSpace series = solve_de(F, q, k, DeMethod::series);
        REQUIRE(dense == series);
        REQUIRE(dense.is_empty() == (trial % 4 == 3));
    }
}

TEST_CASE("planted two-dimensional solution space")
{
    // Q_2 y'' + Q_1 y' + Q_0 y = 0 with the Wronskian coefficients of h1, h2.
    std::mt19937_64 rng(33);
    PrimeField F(kGoldilocks);
    for (std::size_t k : {std::size_t{60}, std::size_t{700}}) {
        Poly h1 = random_poly(F, static_cast<int>(k) - 1, rng), h2 = random_poly(F, static_cast<int>(k) - 3, rng);
        Poly f0 = random_poly(F, static_cast<int>(k) - 1, rng);
        Poly d1 = oracle_derivative(F, h1), d2 = oracle_derivative(F, h2);
        Poly dd1 = oracle_derivative(F, d1), dd2 = oracle_derivative(F, d2);
        DiffForm q(2);
        q.y(2) = oracle_add(F, oracle_mul(F, h1, d2), oracle_neg(F, oracle_mul(F, d1, h2)));
        q.y(1) = oracle_add(F, oracle_mul(F, dd1, h2), oracle_neg(F, oracle_mul(F, h1, dd2)));
        q.y(0) = oracle_add(F, oracle_mul(F, d1, dd2), oracle_neg(F, oracle_mul(F, dd1, d2)));
        DiffForm hom = q;
        q.free_part() = oracle_neg(F, oracle_apply(F, hom, f0));

        for (DeMethod method : {DeMethod::dense, DeMethod::series, DeMethod::automatic}) {
            if (k > 100 && method == DeMethod::dense) continue;
            AffineSpace A = solve_de(F, q, k, method);
            REQUIRE(A.dimension() == 2);
            CHECK(A.contains(F, f0));
            CHECK(A.contains(F, oracle_add(F, f0, h1)));
            CHECK(A.contains(F, oracle_add(F, f0, h2)));
            for (int t = 0; t < 3; ++t) {
                Poly f = A.point(F, {random_elem(F, rng), random_elem(F, rng)});
                CHECK(oracle_apply(F, q, f).is_zero());
            }
        }
    }
}

TEST_CASE("canonical form: equal sets compare equal")
{
    PrimeField F(13);
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 5;
        std::vector<Poly> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(random_poly(F, 4, rng));
        Poly off = random_poly(F, 4, rng);
        AffineSpace A = AffineSpace::make(F, k, off, gens);
        // Same set from mixed generators and a shifted offset.
        std::vector<Poly> mixed{add(F, gens[0], scale(F, gens[1], 3)), gens[1], add(F, gens[2], gens[0]), gens[2]};
        AffineSpace B = AffineSpace::make(F, k, add(F, off, scale(F, gens[2], 5)), mixed);
        REQUIRE(A == B);
        for (std::size_t i = 0; i + 1 < A.basis.size(); ++i) REQUIRE(A.basis[i].degree() < A.basis[i + 1].degree());
        for (const Poly& b : A.basis) REQUIRE(b.leading() == 1);
    }
}

TEST_CASE("affine_constrain examples")
{
    PrimeField F(13);
    AffineSpace all = AffineSpace::everything(F, 2);
    AffineSpace c = affine_constrain(F, all, 1, Symbol{3});
    CHECK(c.offset == Poly{3});
    CHECK(c.basis == std::vector<Poly>{Poly{F.neg(1), 1}});

    AffineSpace five = AffineSpace::make(F, 2, Poly{5}, {});
    CHECK(affine_constrain(F, five, 0, Symbol{1}).is_empty());
    CHECK(affine_constrain(F, five, 0, Symbol{5}) == five);
    CHECK(affine_constrain(F, c, 1, Symbol{3}) == c);
}

TEST_CASE("affine_constrain matches filtering and commutes")
{
    PrimeField F(13);
    const std::size_t k = 4;
    const auto universe = all_polys(F, k);
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Poly> gens;
        const int dim = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < dim; ++i) gens.push_back(random_poly(F, 3, rng));
        AffineSpace A = AffineSpace::make(F, k, random_poly(F, 3, rng), gens);
        const std::size_t s = 1 + rng() % 2;
        Elem a1 = random_elem(F, rng), a2 = random_elem(F, rng);
        // Half the time take the constraint values from a member so the result is nonempty.
        Poly member = A.point(F, std::vector<Elem>(A.dimension(), 1));
        Symbol b1 = trial % 2 ? eval_derivs(F, member, a1, s) : Symbol{random_elem(F, rng), random_elem(F, rng)};
        Symbol b2 = trial % 2 ? eval_derivs(F, member, a2, s) : Symbol{random_elem(F, rng), random_elem(F, rng)};
        b1.resize(s);
        b2.resize(s);

        AffineSpace one = affine_constrain(F, A, a1, b1);
        REQUIRE(one.dimension() <= A.dimension());
        check_against_enumeration(F, one, universe,
                                  [&](const Poly& f) { return A.contains(F, f) && eval_derivs(F, f, a1, s) == b1; });
        AffineSpace x = affine_constrain(F, one, a2, b2);
        AffineSpace y = affine_constrain(F, affine_constrain(F, A, a2, b2), a1, b1);
        REQUIRE(x == y);
    }
}

TEST_CASE("affine_member_at")
{
    PrimeField F(13);
    AffineSpace point = AffineSpace::make(F, 3, Poly{1, 2}, {});
    for (Elem a = 0; a < 13; ++a) CHECK(affine_member_at(F, point, a, 2).constant);

    AffineSpace line = AffineSpace::make(F, 2, Poly{7}, {Poly{0, 1}});
    CHECK(affine_member_at(F, line, 0, 1).constant);
    for (Elem a = 1; a < 13; ++a) {
        CHECK_FALSE(affine_member_at(F, line, a, 1).constant);
        AffineSpace vanish = AffineSpace::make(F, 2, Poly{7}, {Poly{F.neg(a), 1}});
        CHECK(affine_member_at(F, vanish, a, 1).constant);
        EvalMap two = affine_member_at(F, vanish, a, 2);
        CHECK_FALSE(two.constant);
        CHECK(two.rank == 1);
    }
}
