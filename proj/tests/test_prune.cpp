#include <doctest.h>

#include "mcrec/parallel.hpp"
#include "mcrec/prune.hpp"
#include "support.hpp"

using namespace mcrec;
using mcrec::testing::all_polys;
using mcrec::testing::random_elem;
using mcrec::testing::random_poly;

namespace {

// Random lists over F_13 with two planted messages, each present at roughly
// `rate` of the coordinates.
ReceivedWord planted_word(const CodeParams& params, std::size_t ell, const std::vector<Poly>& planted, double rate,
                          std::mt19937_64& rng)
{
    const PrimeField& F = params.field;
    ReceivedWord w{F.modulus(), params.s, ell, {}};
    std::bernoulli_distribution keep(rate);
    for (std::size_t i = 0; i < params.n; ++i) {
        ReceivedCoordinate c{params.points[i], {}};
        for (const Poly& f : planted)
            if (c.options.size() < ell && keep(rng)) c.options.push_back(eval_derivs(F, f, params.points[i], params.s));
        while (c.options.size() < ell) {
            Symbol t(params.s);
            for (auto& x : t) x = random_elem(F, rng);
            c.options.push_back(t);
        }
        std::shuffle(c.options.begin(), c.options.end(), rng);
        w.coords.push_back(std::move(c));
    }
    return w;
}

}  // namespace

TEST_CASE("prune trivial spaces")
{
    CodeParams params = CodeParams::make(13, 6, 2, 2);
    Poly f{3, 4};
    ReceivedWord w = simulate_channel(params, f, 6, 2, 1);
    AffineSpace single = AffineSpace::make(params.field, 2, f, {});
    CHECK(prune(params.field, single, w, 6) == std::vector<Poly>{f});
    ReceivedWord w4 = simulate_channel(params, f, 4, 2, 2);
    CHECK(prune(params.field, single, w4, 4) == std::vector<Poly>{f});
    CHECK(prune(params.field, single, w4, 5).empty());
    CHECK(prune(params.field, AffineSpace::empty_space(2), w, 1).empty());
}

TEST_CASE("verify_candidate")
{
    CodeParams params = CodeParams::make(13, 6, 2, 2);
    const PrimeField& F = params.field;
    Poly f{1, 7};
    CHECK(verify_candidate(F, f, simulate_channel(params, f, 6, 2, 3), 6));

    // Every option differs from encode(f).
    ReceivedWord zero{13, 2, 1, {}};
    Codeword cw = encode(params, f);
    for (std::size_t i = 0; i < 6; ++i) {
        Symbol t = cw.symbols[i];
        t[0] = F.add(t[0], 1);
        zero.coords.push_back({params.points[i], {t}});
    }
    CHECK_FALSE(verify_candidate(F, f, zero, 6));
    CHECK_FALSE(verify_candidate(F, f, zero, 1));

    for (std::size_t t = 1; t <= 6; ++t) {
        ReceivedWord w = simulate_channel(params, f, t, 2, 10 + t);
        CHECK(verify_candidate(F, f, w, t));
        CHECK_FALSE(verify_candidate(F, f, w, t + 1));
    }
}

TEST_CASE("prune equals brute force over F_13, n = 6, s = 2, k = 2, ell = 2")
{
    CodeParams params = CodeParams::make(13, 6, 2, 2);
    const PrimeField& F = params.field;
    const auto messages = all_polys(F, 2);
    std::mt19937_64 rng(41);
    PruneConfig cfg;
    cfg.trials = 600;
    std::size_t nonempty = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Poly> planted{random_poly(F, 1, rng), random_poly(F, 1, rng)};
        ReceivedWord w = planted_word(params, 2, planted, 0.7, rng);
        const std::size_t threshold = 2 + trial % 5;
        cfg.seed = static_cast<std::uint64_t>(trial);

        std::vector<Poly> expect;
        for (const Poly& f : messages)
            if (agreement_count(F, f, w) >= threshold) expect.push_back(f);
        std::sort(expect.begin(), expect.end(), [](const Poly& a, const Poly& b) { return a.coeffs() < b.coeffs(); });

        std::vector<Poly> got = prune(F, AffineSpace::everything(F, 2), w, threshold, cfg);
        REQUIRE(got == expect);
        nonempty += !expect.empty();
    }
    CHECK(nonempty > 20);
}

TEST_CASE("prune is reproducible and independent of the thread count")
{
    CodeParams params = CodeParams::make(13, 6, 2, 2);
    const PrimeField& F = params.field;
    std::mt19937_64 rng(42);
    ReceivedWord w = planted_word(params, 2, {Poly{1, 2}, Poly{5}}, 0.8, rng);
    PruneConfig cfg;
    cfg.trials = 7;
    cfg.seed = 99;
    const std::size_t saved = thread_limit();
    set_thread_limit(1);
    auto a = prune(F, AffineSpace::everything(F, 2), w, 3, cfg);
    set_thread_limit(4);
    auto b = prune(F, AffineSpace::everything(F, 2), w, 3, cfg);
    set_thread_limit(saved);
    CHECK(a == b);
    CHECK(a == prune(F, AffineSpace::everything(F, 2), w, 3, cfg));
}

TEST_CASE("default trial budget")
{
    PruneConfig cfg;
    cfg.gamma = 1e-6;
    CHECK(cfg.trials_for(0) == 20);
    CHECK(cfg.trials_for(3) == 80);
    cfg.gamma = 0.5;
    CHECK(cfg.trials_for(1) == 2);
    cfg.gamma = 0;
    CHECK_THROWS_AS(cfg.trials_for(1), ParamError);
}
