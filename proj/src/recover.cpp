#include "mcrec/recover.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace mcrec {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Tolerance for ratios like 4 ell/eps that are meant to be integers.
constexpr double kSlack = 1e-9;

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

void check_word(const ReceivedWord& word, const RecoveryParams& params)
{
    word.validate();
    const CodeParams& code = params.code;
    if (word.p != code.field.modulus()) throw ParamError("word modulus differs from code modulus");
    if (word.s != code.s) throw ParamError("word multiplicity differs from code multiplicity");
    if (word.points() != code.points) throw ParamError("word evaluation points differ from code points");
    if (word.ell > params.ell) throw ParamError("word list size exceeds ell");
}

}  // namespace

double required_s(std::size_t ell, double epsilon)
{
    const double l = static_cast<double>(ell);
    return 16 * l / (epsilon * epsilon) + 4 * l / epsilon;
}

RecoveryParams derive_parameters(const CodeParams& code, std::size_t ell, double epsilon)
{
    if (ell == 0) throw ParamError("ell must be at least 1");
    const double R = code.rate();
    if (!(epsilon > 0) || epsilon > 1 - R + kSlack)
        throw ParamError("epsilon must lie in (0, 1-R] with 1-R = " + fmt(1 - R));
    const double s0 = required_s(ell, epsilon);
    if (static_cast<double>(code.s) <= s0 + kSlack)
        throw ParamError("s too small: capacity mode needs s > s0 = " + fmt(s0));
    const auto m = static_cast<std::size_t>(std::ceil(4 * static_cast<double>(ell) / epsilon - kSlack));
    if (m >= code.s) throw ParamError("m = ceil(4 ell/eps) must be at most s-1");

    RecoveryParams P;
    P.code = code;
    P.ell = ell;
    P.m = m;
    P.epsilon = epsilon;
    const u128 n = code.n, l = ell, s = code.s, k = code.k, sm = s - m;
    // t* = floor(n l/m + (n l + k)/(s-m)) + 1
    const u128 num = n * l * sm + (n * l + k) * m, den = static_cast<u128>(m) * sm;
    P.threshold = static_cast<std::size_t>(num / den + 1);
    P.degree_bound = static_cast<std::size_t>(n * l * sm / m + n * l);
    P.list_bound = std::pow(static_cast<double>(ell) / epsilon, (1 + std::log2(static_cast<double>(ell))) / epsilon);
    if (P.threshold > code.n) throw ParamError("agreement threshold exceeds n");
    if (static_cast<double>(P.threshold) > (R + epsilon) * static_cast<double>(code.n) + kSlack)
        throw std::logic_error("agreement threshold exceeds (R + epsilon) n");
    return P;
}

RecoveryParams manual_parameters(const CodeParams& code, std::size_t ell, std::size_t m, std::size_t threshold,
                                 InterpolationMethod method)
{
    check_basis_params(code.field, code.s, m, ell);
    if (threshold == 0 || threshold > code.n) throw ParamError("threshold must lie in [1, n]");
    method = resolve_method(code.field, code.s, method);
    const std::size_t D = det_degree_bound(code.n, code.s, m, ell, method) / (m + 2);
    if (static_cast<u128>(threshold) * (code.s - m) < static_cast<u128>(D) + code.k)
        throw ParamError("threshold below interpolation guarantee");

    RecoveryParams P;
    P.code = code;
    P.ell = ell;
    P.m = m;
    P.threshold = threshold;
    P.degree_bound = D;
    P.method = method;
    return P;
}

std::vector<Poly> list_recover(const ReceivedWord& word, const RecoveryParams& params, const PruneConfig& cfg,
                               RecoveryTrace* trace)
{
    check_word(word, params);
    const CodeParams& code = params.code;
    const PrimeField& F = code.field;

    Interpolation I = interpolate_difform(F, word, code.s, params.m, params.ell, code.k, params.method);
    auto t0 = Clock::now();
    AffineSpace A = solve_de(F, I.q, code.k);
    const double solve_ms = elapsed_ms(t0);
    t0 = Clock::now();
    std::vector<Poly> out = prune(F, A, word, params.threshold, cfg);
    const double prune_ms = elapsed_ms(t0);

    if (trace) {
        trace->basis_ms = I.basis_ms;
        trace->reduce_ms = I.reduce_ms;
        trace->solve_ms = solve_ms;
        trace->prune_ms = prune_ms;
        trace->interpolation = std::move(I);
        trace->space = std::move(A);
    }
    return out;
}

std::vector<Poly> list_recover_manual(const ReceivedWord& word, std::size_t s, std::size_t m, std::size_t ell,
                                      std::size_t k, std::size_t threshold, const PruneConfig& cfg,
                                      RecoveryTrace* trace)
{
    word.validate();
    const CodeParams code = CodeParams::make(word.p, word.n(), s, k, word.points());
    return list_recover(word, manual_parameters(code, ell, m, threshold), cfg, trace);
}

}  // namespace mcrec
