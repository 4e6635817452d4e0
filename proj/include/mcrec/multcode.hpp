#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcrec/field.hpp"
#include "mcrec/poly.hpp"

namespace mcrec {

// One coordinate of a multiplicity codeword: (f(a), f'(a), ..., f^(s-1)(a)).
using Symbol = std::vector<Elem>;

class ParamError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct CodeParams {
    PrimeField field;
    std::size_t n = 0;
    std::size_t s = 0;
    std::size_t k = 0;
    std::vector<Elem> points;

    // Validates; points default to 0, 1, ..., n-1. Throws ParamError.
    static CodeParams make(u64 p, std::size_t n, std::size_t s, std::size_t k,
                           std::optional<std::vector<Elem>> points = std::nullopt);

    double rate() const { return static_cast<double>(k) / (static_cast<double>(n) * static_cast<double>(s)); }
};

// Every violated constraint, by name. Empty when the parameters are usable.
std::vector<std::string> validate_params(u64 p, std::size_t n, std::size_t s, std::size_t k,
                                         const std::vector<Elem>& points);

struct Codeword {
    std::vector<Symbol> symbols;  // aligned with CodeParams::points
    bool operator==(const Codeword&) const = default;
};

struct ReceivedCoordinate {
    Elem alpha = 0;
    std::vector<Symbol> options;
    bool operator==(const ReceivedCoordinate&) const = default;
};

/// Per-coordinate candidate lists for list recovery. Agreement at a
/// coordinate means the full s-tuple appears among its options.
struct ReceivedWord {
    u64 p = 0;
    std::size_t s = 0;
    std::size_t ell = 0;
    std::vector<ReceivedCoordinate> coords;

    std::size_t n() const noexcept { return coords.size(); }
    std::vector<Elem> points() const;
    // Throws ParamError on ragged tuples, empty or oversized lists, repeated points.
    void validate() const;
    bool operator==(const ReceivedWord&) const = default;
};

// Throws ParamError("message degree too large") when deg f >= k.
Codeword encode(const CodeParams& params, const Poly& f);

std::size_t agreement_count(const PrimeField& F, const Poly& f, const ReceivedWord& word);
std::size_t agreement_count(const CodeParams& params, const Poly& f, const ReceivedWord& word);

// Exactly `agreements` uniformly chosen coordinates carry encode(f); all lists
// are filled to `ell` entries with uniform decoys that differ from encode(f).
ReceivedWord simulate_channel(const CodeParams& params, const Poly& f, std::size_t agreements, std::size_t ell,
                              std::uint64_t seed);
ReceivedWord simulate_channel(const CodeParams& params, const Codeword& cw, std::size_t agreements, std::size_t ell,
                              std::uint64_t seed);

}  // namespace mcrec
