#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mcrec/difform.hpp"
#include "mcrec/multcode.hpp"

namespace mcrec {

/// Lower-triangular basis of the module of Y-linear forms satisfying the
/// vanishing conditions at every covered point.
///
/// rows[0] is the Y-free row prod (X-a)^(s-m); rows[1+i] ends in Y_i. The
/// diagonal of rows[1+i] is prod (X-a)^(s-m) for i <= ell-2 and
/// prod (X-a)^(ell-1) otherwise, products over `points`.
struct GoodBasis {
    std::size_t s = 0;
    std::size_t m = 0;
    std::size_t ell = 0;
    std::vector<Elem> points;
    std::vector<DiffForm> rows;
    Poly modulus;  // prod (X-a)^(s-m)

    std::size_t width() const noexcept { return m + 2; }
    const Poly& diagonal(std::size_t row) const { return rows[row][row]; }
    // Sum of diagonal degrees.
    std::size_t det_degree() const;
    bool empty() const noexcept { return points.empty(); }
};

// Dedupe, then pad to exactly ell entries by repeating the first option.
std::vector<Symbol> normalized_options(const std::vector<Symbol>& options, std::size_t ell);

// Throws ParamError on m > s-1, m < ell-1, or s-m >= p.
void check_basis_params(const PrimeField& F, std::size_t s, std::size_t m, std::size_t ell);

GoodBasis single_point_basis(const PrimeField& F, Elem alpha, const std::vector<Symbol>& options, std::size_t s,
                             std::size_t m, std::size_t ell);

// Basis over U.points + V.points. Throws ParamError on overlap or mismatch.
GoodBasis combine_bases(const PrimeField& F, const GoodBasis& U, const GoodBasis& V);

// Self-test hook: while on, combine_bases negates one side of every CRT
// combination, so the merged rows break the tau-conditions.
void inject_crt_fault(bool on) noexcept;

// Balanced recursive merge of single-point bases over all coordinates.
GoodBasis build_basis(const PrimeField& F, const ReceivedWord& word, std::size_t s, std::size_t m, std::size_t ell);

// Back-substitution from Y_m down against the triangular rows.
bool lattice_membership(const PrimeField& F, const GoodBasis& B, const DiffForm& R);

// tau_vector(q, alpha, beta, s-m) vanishes for every beta in options.
bool satisfies_tau_conditions(const PrimeField& F, const DiffForm& q, Elem alpha, const std::vector<Symbol>& options,
                              std::size_t s, std::size_t m);
// Same, at every coordinate of word.
bool satisfies_tau_conditions(const PrimeField& F, const DiffForm& q, const ReceivedWord& word, std::size_t s,
                              std::size_t m);

// Row degree: max degree over entries, kZeroDegree for the zero row.
int row_degree(const std::vector<Poly>& row);

/// Nonzero lattice vector of minimum max-degree, via reduction to weak Popov
/// form by simple transformations. Ties go to the earliest row.
/// Throws PolyError("empty lattice") when every row is zero.
std::vector<Poly> shortest_vector(const PrimeField& F, PolyMatrix rows);

// Reduces `rows` in place to weak Popov form (zero rows are dropped).
void weak_popov_reduce(const PrimeField& F, PolyMatrix& rows);

PolyMatrix to_matrix(const GoodBasis& B);

/// How the interpolating form is found.
///
/// basis: shortest vector of the merged good basis.
/// tau_module: minimal basis of the module of all forms meeting the
/// tau-conditions, by divide and conquer over the points. That module contains
/// the good-basis module, so its shortest vector is no longer; needs s < p.
/// automatic: tau_module when s < p, basis otherwise.
enum class InterpolationMethod { automatic, basis, tau_module };

InterpolationMethod resolve_method(const PrimeField& F, std::size_t s, InterpolationMethod method);

// Upper bound on the determinant degree of the lattice the method reduces.
std::size_t det_degree_bound(std::size_t n, std::size_t s, std::size_t m, std::size_t ell, InterpolationMethod method);

struct Interpolation {
    DiffForm q;
    InterpolationMethod method = InterpolationMethod::basis;
    // Degree of the determinant of the reduced lattice.
    std::size_t det_degree = 0;
    // floor(det_degree / (m+2)); x_degree(q) never exceeds it.
    std::size_t degree_bound = 0;
    // Wall time of building the lattice basis and of extracting the short row.
    double basis_ms = 0, reduce_ms = 0;
};

Interpolation interpolate_difform(const PrimeField& F, const ReceivedWord& word, std::size_t s, std::size_t m,
                                  std::size_t ell, std::size_t k,
                                  InterpolationMethod method = InterpolationMethod::automatic);

// Row-reduced basis (rows of width m+2) of every form with Y-index <= m that
// satisfies all tau-conditions of word. Throws ParamError when s >= p.
struct ReducedBasis {
    PolyMatrix rows;
    std::vector<std::size_t> degrees;  // row degrees; they sum to the determinant degree
};
ReducedBasis tau_module_basis(const PrimeField& F, const ReceivedWord& word, std::size_t s, std::size_t m,
                              std::size_t ell);

// deg det of the merged basis: n ell (s-m) + (m+2-ell) n (ell-1).
std::size_t nice_basis_det_degree(std::size_t n, std::size_t s, std::size_t m, std::size_t ell);

/// Smallest agreement count t with t (s - m) >= x_degree + k. Q(f) has degree
/// below x_degree + k and vanishes to order s - m at each agreement, so such
/// an f always satisfies Q.
std::size_t capture_threshold(std::size_t x_degree, std::size_t k, std::size_t s, std::size_t m);

}  // namespace mcrec
