#include "mcrec/prune.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <set>
#include <stdexcept>

#include "mcrec/parallel.hpp"

namespace mcrec {

namespace {

using Found = std::set<std::vector<Elem>>;

class Pass {
  public:
    Pass(const PrimeField& F, const ReceivedWord& word, std::size_t max_depth, std::mt19937_64 rng, Found& out)
        : F_(F), word_(word), max_depth_(max_depth), rng_(std::move(rng)), out_(out)
    {
        order_.resize(word.n());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    }

    void run(const AffineSpace& A, std::size_t depth)
    {
        if (A.is_empty()) return;
        if (A.dimension() == 0) {
            out_.insert(A.offset->coeffs());
            return;
        }
        if (depth >= max_depth_) return;

        // First hit of a random order is a uniform choice among varying coordinates.
        std::shuffle(order_.begin(), order_.end(), rng_);
        const ReceivedCoordinate* coord = nullptr;
        for (std::size_t i : order_) {
            if (!affine_member_at(F_, A, word_.coords[i].alpha, word_.s).constant) {
                coord = &word_.coords[i];
                break;
            }
        }
        if (!coord) throw std::logic_error("no coordinate separates the affine space");

        std::vector<Symbol> options;
        for (const Symbol& b : coord->options)
            if (std::find(options.begin(), options.end(), b) == options.end()) options.push_back(b);
        for (const Symbol& b : options) {
            AffineSpace B = affine_constrain(F_, A, coord->alpha, b);
            if (!B.is_empty() && B.dimension() >= A.dimension()) throw std::logic_error("branch did not reduce dimension");
            run(B, depth + 1);
        }
    }

  private:
    const PrimeField& F_;
    const ReceivedWord& word_;
    std::size_t max_depth_;
    std::mt19937_64 rng_;
    Found& out_;
    std::vector<std::size_t> order_;
};

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

std::size_t PruneConfig::trials_for(std::size_t dim) const
{
    if (trials > 0) return trials;
    if (!(gamma > 0 && gamma < 1)) throw ParamError("gamma must lie in (0, 1)");
    return static_cast<std::size_t>(std::ceil(std::log2(1 / gamma))) * (dim + 1);
}

bool verify_candidate(const PrimeField& F, const Poly& f, const ReceivedWord& word, std::size_t threshold)
{
    return agreement_count(F, f, word) >= threshold;
}

std::vector<Poly> prune(const PrimeField& F, const AffineSpace& A, const ReceivedWord& word, std::size_t threshold,
                        const PruneConfig& cfg)
{
    if (threshold == 0) throw ParamError("threshold must be at least 1");
    if (A.is_empty()) return {};

    Found found;
    if (A.dimension() == 0) {
        found.insert(A.offset->coeffs());
    } else {
        const std::size_t trials = cfg.trials_for(A.dimension());
        const std::size_t workers = std::min(trials, thread_limit());
        auto work = [&](std::size_t w) {
            Found local;
            for (std::size_t t = w; t < trials; t += workers)
                Pass(F, word, cfg.max_branch_depth, trial_rng(cfg.seed, t), local).run(A, 0);
            return local;
        };
        std::vector<std::future<Found>> jobs;
        for (std::size_t w = 1; w < workers; ++w) jobs.push_back(std::async(std::launch::async, work, w));
        found = work(0);
        for (auto& j : jobs) found.merge(j.get());
    }

    std::vector<Poly> out;
    for (const auto& c : found) {
        Poly f(c);
        if (verify_candidate(F, f, word, threshold)) out.push_back(std::move(f));
    }
    return out;
}

}  // namespace mcrec
