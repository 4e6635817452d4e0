#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mcrec/field.hpp"

namespace mcrec::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

struct RunConfig {
    std::string command;
    std::string in = "-", out = "-";
    std::optional<u64> p;
    std::optional<std::size_t> n, s, k, ell, m, threshold, agreements, trials, threads;
    std::optional<double> epsilon;
    double gamma = 1e-6;
    u64 seed = 1;
    std::vector<Elem> points;
    // bench
    std::vector<std::size_t> sizes{64, 128, 256, 512};
    double rate = 0.25;
    double fraction = 0.75;
    // selftest
    bool inject_fault = false;
};

int cmd_encode(const RunConfig& cfg, std::ostream& out);
int cmd_corrupt(const RunConfig& cfg, std::ostream& out);
int cmd_recover(const RunConfig& cfg, std::ostream& out);
int cmd_bench(const RunConfig& cfg, std::ostream& out);
// Reports one line per suite on out; the first failure also goes to err.
int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and dispatches. Errors go to err with the matching exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mcrec::cli
