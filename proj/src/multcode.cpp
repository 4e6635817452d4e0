#include "mcrec/multcode.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace mcrec {

std::vector<std::string> validate_params(u64 p, std::size_t n, std::size_t s, std::size_t k,
                                         const std::vector<Elem>& points)
{
    std::vector<std::string> errs;
    if (!is_prime(p)) errs.push_back("modulus p must be prime");
    if (n == 0) errs.push_back("block length n must be positive");
    if (s == 0) errs.push_back("multiplicity s must be positive");
    if (k == 0) errs.push_back("degree bound k must be positive");
    if (p <= k) errs.push_back("p must exceed k");
    if (p <= n) errs.push_back("p must exceed n");
    if (p <= s) errs.push_back("p must exceed s");
    if (points.size() != n) errs.push_back("number of evaluation points must equal n");
    if (std::any_of(points.begin(), points.end(), [p](Elem a) { return a >= p; }))
        errs.push_back("evaluation points must be canonical residues");
    if (std::set<Elem>(points.begin(), points.end()).size() != points.size())
        errs.push_back("evaluation points not distinct");
    if (static_cast<u128>(k) >= static_cast<u128>(n) * s) errs.push_back("rate must be < 1 (need k < n*s)");
    return errs;
}

CodeParams CodeParams::make(u64 p, std::size_t n, std::size_t s, std::size_t k, std::optional<std::vector<Elem>> points)
{
    std::vector<Elem> pts;
    if (points) {
        pts = std::move(*points);
    } else {
        pts.resize(n);
        std::iota(pts.begin(), pts.end(), Elem{0});
    }
    auto errs = validate_params(p, n, s, k, pts);
    if (!errs.empty()) {
        std::string msg = errs.front();
        for (std::size_t i = 1; i < errs.size(); ++i) msg += "; " + errs[i];
        throw ParamError(msg);
    }
    return CodeParams{PrimeField(p), n, s, k, std::move(pts)};
}

std::vector<Elem> ReceivedWord::points() const
{
    std::vector<Elem> pts;
    pts.reserve(coords.size());
    for (const auto& c : coords) pts.push_back(c.alpha);
    return pts;
}

void ReceivedWord::validate() const
{
    if (!is_prime(p)) throw ParamError("modulus p must be prime");
    if (s == 0) throw ParamError("multiplicity s must be positive");
    if (ell == 0) throw ParamError("list size ell must be positive");
    std::set<Elem> seen;
    for (const auto& c : coords) {
        if (c.alpha >= p) throw ParamError("evaluation points must be canonical residues");
        if (!seen.insert(c.alpha).second) throw ParamError("evaluation points not distinct");
        if (c.options.empty()) throw ParamError("every coordinate needs at least one option");
        if (c.options.size() > ell) throw ParamError("list at coordinate exceeds ell entries");
        for (const auto& t : c.options) {
            if (t.size() != s) throw ParamError("option tuple length must equal s");
            if (std::any_of(t.begin(), t.end(), [this](Elem x) { return x >= p; }))
                throw ParamError("option entries must be canonical residues");
        }
    }
}

Codeword encode(const CodeParams& params, const Poly& f)
{
    if (f.degree() >= static_cast<int>(params.k)) throw ParamError("message degree too large");
    Codeword cw;
    cw.symbols.reserve(params.n);
    for (Elem a : params.points) cw.symbols.push_back(eval_derivs(params.field, f, a, params.s));
    return cw;
}

std::size_t agreement_count(const PrimeField& F, const Poly& f, const ReceivedWord& word)
{
    std::size_t count = 0;
    for (const auto& c : word.coords) {
        Symbol sym = eval_derivs(F, f, c.alpha, word.s);
        if (std::find(c.options.begin(), c.options.end(), sym) != c.options.end()) ++count;
    }
    return count;
}

std::size_t agreement_count(const CodeParams& params, const Poly& f, const ReceivedWord& word)
{
    if (f.degree() >= static_cast<int>(params.k)) throw ParamError("message degree too large");
    return agreement_count(params.field, f, word);
}

ReceivedWord simulate_channel(const CodeParams& params, const Codeword& cw, std::size_t agreements, std::size_t ell,
                              std::uint64_t seed)
{
    if (agreements > params.n) throw ParamError("agreements must not exceed n");
    if (ell == 0) throw ParamError("list size ell must be positive");
    if (cw.symbols.size() != params.n) throw ParamError("codeword length must equal n");
    for (const auto& sym : cw.symbols)
        if (sym.size() != params.s) throw ParamError("codeword symbol length must equal s");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> elem(0, params.field.modulus() - 1);

    std::vector<std::size_t> order(params.n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> planted(params.n, false);
    for (std::size_t i = 0; i < agreements; ++i) planted[order[i]] = true;

    ReceivedWord word{params.field.modulus(), params.s, ell, {}};
    word.coords.reserve(params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
        ReceivedCoordinate rc{params.points[i], {}};
        std::size_t decoys = planted[i] ? ell - 1 : ell;
        for (std::size_t d = 0; d < decoys; ++d) {
            Symbol t(params.s);
            do {
                for (auto& x : t) x = elem(rng);
            } while (t == cw.symbols[i]);
            rc.options.push_back(std::move(t));
        }
        if (planted[i]) {
            std::size_t pos = std::uniform_int_distribution<std::size_t>(0, rc.options.size())(rng);
            rc.options.insert(rc.options.begin() + static_cast<std::ptrdiff_t>(pos), cw.symbols[i]);
        }
        word.coords.push_back(std::move(rc));
    }
    return word;
}

ReceivedWord simulate_channel(const CodeParams& params, const Poly& f, std::size_t agreements, std::size_t ell,
                              std::uint64_t seed)
{
    return simulate_channel(params, encode(params, f), agreements, ell, seed);
}

}  // namespace mcrec
