#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "io.hpp"
#include "mcrec/recover.hpp"

namespace mcrec::cli {

int cmd_bench(const RunConfig& cfg, std::ostream& out)
{
    const u64 p = cfg.p.value_or(kGoldilocks);
    const std::size_t s = cfg.s.value_or(24), m = cfg.m.value_or(8), ell = cfg.ell.value_or(2);
    if (cfg.epsilon) throw std::invalid_argument("bench runs in manual mode; use --m");

    std::ostringstream csv;
    csv << "n,s,m,ell,phase,wall_time_ms,output_list_size\n";
    for (std::size_t n : cfg.sizes) {
        const std::size_t k = cfg.k.value_or(std::max<std::size_t>(
            1, static_cast<std::size_t>(cfg.rate * static_cast<double>(n) * static_cast<double>(s))));
        const auto t = static_cast<std::size_t>(std::ceil(cfg.fraction * static_cast<double>(n)));
        const CodeParams params = CodeParams::make(p, n, s, k);
        const RecoveryParams rp = manual_parameters(params, ell, m, cfg.threshold.value_or(t));

        std::mt19937_64 rng(cfg.seed ^ n);
        std::vector<Elem> c(k);
        for (auto& x : c) x = std::uniform_int_distribution<u64>(0, p - 1)(rng);
        const ReceivedWord word = simulate_channel(params, Poly(std::move(c)), t, ell, cfg.seed + n);

        PruneConfig pc;
        pc.trials = cfg.trials.value_or(0);
        pc.seed = cfg.seed;
        pc.gamma = cfg.gamma;
        RecoveryTrace trace;
        const std::size_t found = list_recover(word, rp, pc, &trace).size();

        const std::pair<const char*, double> phases[] = {{"basis-build", trace.basis_ms},
                                                         {"shortest-vector", trace.reduce_ms},
                                                         {"de-solve", trace.solve_ms},
                                                         {"prune", trace.prune_ms}};
        for (const auto& [name, ms] : phases) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3f", ms);
            csv << n << ',' << s << ',' << m << ',' << ell << ',' << name << ',' << buf << ',' << found << '\n';
        }
    }
    io::write_text(cfg.out, csv.str(), out);
    return kOk;
}

}  // namespace mcrec::cli
