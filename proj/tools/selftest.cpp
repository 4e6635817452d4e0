// Invariant suites at fixed tiny parameters.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "commands.hpp"
#include "mcrec/desolve.hpp"
#include "mcrec/lattice.hpp"
#include "mcrec/recover.hpp"

namespace mcrec::cli {

namespace {

using Failure = std::optional<std::string>;

Poly random_poly(const PrimeField& F, std::size_t len, std::mt19937_64& rng)
{
    std::vector<Elem> c(len);
    for (auto& x : c) x = std::uniform_int_distribution<u64>(0, F.modulus() - 1)(rng);
    return Poly(std::move(c));
}

std::vector<Poly> all_polys(const PrimeField& F, std::size_t k)
{
    std::vector<Poly> out;
    std::vector<Elem> c(k, 0);
    while (true) {
        out.emplace_back(c);
        std::size_t i = 0;
        while (i < k && ++c[i] == F.modulus()) c[i++] = 0;
        if (i == k) return out;
    }
}

Failure tau_conditions(std::mt19937_64& rng)
{
    const std::size_t n = 8, s = 6, m = 3, ell = 2, k = 12;
    const CodeParams params = CodeParams::make(kGoldilocks, n, s, k);
    for (int trial = 0; trial < 5; ++trial) {
        const ReceivedWord w = simulate_channel(params, random_poly(params.field, k, rng), 2 + trial, ell, rng());
        const GoodBasis B = build_basis(params.field, w, s, m, ell);
        for (std::size_t r = 0; r < B.rows.size(); ++r)
            for (const auto& c : w.coords)
                if (!satisfies_tau_conditions(params.field, B.rows[r], c.alpha, c.options, s, m))
                    return "row " + std::to_string(r) + " violates a tau-condition at alpha = " +
                           std::to_string(c.alpha);
    }
    return std::nullopt;
}

Failure minkowski(std::mt19937_64& rng)
{
    const std::size_t n = 16, s = 10, m = 4, ell = 2, k = 40;
    const CodeParams params = CodeParams::make(kGoldilocks, n, s, k);
    const std::size_t bound = nice_basis_det_degree(n, s, m, ell) / (m + 2);
    for (auto method : {InterpolationMethod::basis, InterpolationMethod::tau_module}) {
        const ReceivedWord w = simulate_channel(params, random_poly(params.field, k, rng), 12, ell, rng());
        const Interpolation I = interpolate_difform(params.field, w, s, m, ell, k, method);
        if (I.q.x_degree() > static_cast<int>(bound))
            return "x-degree " + std::to_string(I.q.x_degree()) + " exceeds " + std::to_string(bound);
        if (!satisfies_tau_conditions(params.field, I.q, w, s, m)) return "interpolant misses a tau-condition";
    }
    return std::nullopt;
}

Failure capture(std::mt19937_64& rng)
{
    const std::size_t n = 16, s = 10, m = 4, ell = 2, k = 40;
    const CodeParams params = CodeParams::make(kGoldilocks, n, s, k);
    for (int trial = 0; trial < 3; ++trial) {
        const Poly f = random_poly(params.field, k, rng);
        const ReceivedWord w = simulate_channel(params, f, n, ell, rng());
        const Interpolation I = interpolate_difform(params.field, w, s, m, ell, k);
        if (n < capture_threshold(static_cast<std::size_t>(I.q.x_degree()), k, s, m)) continue;
        if (!apply_to_poly(params.field, I.q, f).is_zero()) return "planted codeword does not satisfy Q";
    }
    return std::nullopt;
}

Failure de_oracle(std::mt19937_64& rng)
{
    const PrimeField F(13);
    const std::size_t k = 3;
    const auto universe = all_polys(F, k);
    for (int trial = 0; trial < 20; ++trial) {
        DiffForm q(2);
        for (std::size_t j = 0; j < q.width(); ++j) q[j] = random_poly(F, 1 + rng() % 3, rng);
        if (trial % 2 == 0) {
            // Plant a solution.
            DiffForm hom = q;
            hom.free_part() = Poly{};
            q.free_part() = neg(F, apply_to_poly(F, hom, random_poly(F, k, rng)));
        }
        if (q.is_zero()) continue;
        const AffineSpace A = solve_de(F, q, k);
        std::size_t count = 0;
        for (const Poly& f : universe) {
            const bool root = apply_to_poly(F, q, f).is_zero();
            count += root;
            if (root != A.contains(F, f)) return "solution set differs from enumeration";
        }
        std::size_t expect = A.is_empty() ? 0 : 1;
        for (std::size_t d = 0; !A.is_empty() && d < A.dimension(); ++d) expect *= 13;
        if (count != expect) return "solution count differs from enumeration";
    }
    return std::nullopt;
}

Failure shortest_vector_suite(std::mt19937_64& rng)
{
    // Reduced rows have degrees summing to deg det; the shortest is within the Minkowski bound.
    const PrimeField F(7);
    for (int trial = 0; trial < 30; ++trial) {
        PolyMatrix M(3, std::vector<Poly>(3));
        for (auto& row : M)
            for (auto& e : row) e = random_poly(F, 1 + rng() % 4, rng);
        auto minor = [&](std::size_t a, std::size_t b) {
            return sub(F, mul(F, M[1][a], M[2][b]), mul(F, M[1][b], M[2][a]));
        };
        Poly det = add(F, sub(F, mul(F, M[0][0], minor(1, 2)), mul(F, M[0][1], minor(0, 2))),
                       mul(F, M[0][2], minor(0, 1)));
        if (det.is_zero()) continue;
        PolyMatrix R = M;
        weak_popov_reduce(F, R);
        int total = 0;
        for (const auto& row : R) total += row_degree(row);
        if (R.size() != 3 || total != det.degree()) return "reduced row degrees do not sum to deg det";
        const int shortest = row_degree(shortest_vector(F, M));
        if (3 * shortest > det.degree()) return "shortest vector above the Minkowski bound";
    }
    return std::nullopt;
}

Failure end_to_end(std::mt19937_64& rng)
{
    const PrimeField F(13);
    const auto messages = all_polys(F, 2);
    for (int trial = 0; trial < 6; ++trial) {
        ReceivedWord w{13, 2, 2, {}};
        std::vector<Poly> planted;
        for (int i = 0; i < trial % 3; ++i) planted.push_back(random_poly(F, 2, rng));
        for (Elem a = 0; a < 6; ++a) {
            ReceivedCoordinate c{a, {}};
            for (const Poly& f : planted) c.options.push_back(eval_derivs(F, f, a, 2));
            while (c.options.size() < 2) c.options.push_back({rng() % 13, rng() % 13});
            w.coords.push_back(std::move(c));
        }
        std::vector<Poly> expect;
        for (const Poly& f : messages)
            if (agreement_count(F, f, w) == 6) expect.push_back(f);
        std::sort(expect.begin(), expect.end(), [](const Poly& a, const Poly& b) { return a.coeffs() < b.coeffs(); });
        if (list_recover_manual(w, 2, 1, 2, 2, 6) != expect) return "output differs from brute-force decoding";
    }
    return std::nullopt;
}

}  // namespace

int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const std::pair<const char*, std::function<Failure(std::mt19937_64&)>> suites[] = {
        {"tau-conditions", tau_conditions}, {"minkowski", minkowski},
        {"capture", capture},               {"de-solver-oracle", de_oracle},
        {"shortest-vector", shortest_vector_suite}, {"end-to-end-oracle", end_to_end},
    };
    inject_crt_fault(cfg.inject_fault);
    std::optional<std::string> first;
    for (const auto& [name, run] : suites) {
        std::mt19937_64 rng(cfg.seed);
        Failure f;
        try {
            f = run(rng);
        } catch (const std::exception& e) {
            f = std::string("exception: ") + e.what();
        }
        out << (f ? "FAIL " : "PASS ") << name << (f ? ": " + *f : "") << "\n";
        if (f && !first) first = std::string(name) + ": " + *f;
    }
    inject_crt_fault(false);
    if (first) {
        err << "selftest failed: " << *first << "\n";
        return kCheckFailed;
    }
    return kOk;
}

}  // namespace mcrec::cli
