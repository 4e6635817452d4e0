#include "mcrec/desolve.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace mcrec {

namespace {

using Vec = std::vector<Elem>;

struct LinearSolution {
    bool consistent = false;
    Vec particular;
    std::vector<Vec> kernel;
};

// Solves the augmented system rows (each cols + 1 wide) by reduction to RREF.
LinearSolution solve_linear(const PrimeField& F, std::vector<Vec> rows, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        Vec& pr = rows[r];
        const Elem inv = F.inv(pr[c]);
        for (std::size_t t = c; t <= cols; ++t) pr[t] = F.mul(pr[t], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Elem f = rows[i][c];
            Vec& row = rows[i];
            for (std::size_t t = c; t <= cols; ++t)
                if (pr[t] != 0) row[t] = F.sub(row[t], F.mul(f, pr[t]));
        }
        pivots.push_back(c);
        ++r;
    }

    LinearSolution out;
    for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][cols] != 0) return out;
    out.consistent = true;
    out.particular.assign(cols, 0);
    for (std::size_t i = 0; i < r; ++i) out.particular[pivots[i]] = rows[i][cols];

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < r; ++i) v[pivots[i]] = F.neg(rows[i][f]);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

Vec padded(const Poly& p, std::size_t k)
{
    Vec v = p.coeffs();
    v.resize(k, 0);
    return v;
}

// (j+1)(j+2)...(j+i)
Elem rising(const PrimeField& F, std::size_t j, std::size_t i)
{
    Elem r = 1;
    for (std::size_t u = 1; u <= i; ++u) r = F.mul(r, F.reduce(j + u));
    return r;
}

AffineSpace from_solution(const PrimeField& F, std::size_t k, const LinearSolution& sol, const std::vector<Poly>& gens,
                          const Poly& base)
{
    if (!sol.consistent) return AffineSpace::empty_space(k);
    auto combine = [&](const Vec& c, Poly acc) {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) acc = add(F, acc, scale(F, gens[i], c[i]));
        return acc;
    };
    std::vector<Poly> span;
    for (const Vec& v : sol.kernel) span.push_back(combine(v, Poly{}));
    return AffineSpace::make(F, k, combine(sol.particular, base), span);
}

AffineSpace solve_dense(const PrimeField& F, const DiffForm& q, std::size_t k)
{
    const std::size_t M = q.m();
    const std::size_t rows = static_cast<std::size_t>(std::max(q.x_degree(), 0)) + k;
    std::vector<Vec> A(rows, Vec(k + 1, 0));
    // Column j holds apply_to_poly(q, X^j) = sum_i j(j-1)...(j-i+1) Q_i X^(j-i).
    for (std::size_t j = 0; j < k; ++j) {
        Elem ff = 1;
        for (std::size_t i = 0; i <= M && i <= j; ++i) {
            if (i > 0) ff = F.mul(ff, F.reduce(j - i + 1));
            if (ff == 0) break;
            const Poly& Qi = q.y(i);
            for (std::size_t u = 0; u < Qi.size(); ++u)
                A[u + j - i][j] = F.add(A[u + j - i][j], F.mul(ff, Qi[u]));
        }
    }
    for (std::size_t t = 0; t < q.free_part().size(); ++t) A[t][k] = F.neg(q.free_part()[t]);

    std::vector<Poly> gens;
    for (std::size_t j = 0; j < k; ++j) gens.push_back(Poly::monomial(1, j));
    return from_solution(F, k, solve_linear(F, std::move(A), k), gens, Poly{});
}

constexpr std::size_t kNaiveBlock = 32;
constexpr std::size_t kSeriesMin = 256;

/// Coefficient recurrence at a point where the top coefficient Q_M is nonzero.
///
/// In Z = X - a, the Z^t coefficient of apply_to_poly(q, g) contains g_{t+M}
/// only through Q_M(0) (t+1)...(t+M) g_{t+M}, so g_M, ..., g_{k-1} follow from
/// g_0, ..., g_{M-1}. One run with zero initial values and Q~ kept, and one
/// homogeneous run per unit initial vector; the leftover coefficients of the
/// equation then cut the affine combination down.
class SeriesSolver {
  public:
    SeriesSolver(const PrimeField& F, const std::vector<Poly>& qs, std::size_t M, std::size_t k)
        : F_(F), qs_(qs), M_(M), k_(k), L_(k - M), runs_(M + 1)
    {
        kern_.assign(M + 1, Vec(L_, 0));
        for (std::size_t i = 0; i <= M; ++i)
            for (std::size_t d = M - i; d < L_; ++d) kern_[i][d] = qs_[1 + i][d - (M - i)];
        scale_.assign(M + 1, Vec(L_));
        for (std::size_t i = 0; i <= M; ++i)
            for (std::size_t t = 0; t < L_; ++t) scale_[i][t] = rising(F, t + M - i, i);
        den_inv_.resize(L_);
        const Elem lead = qs_[1 + M][0];
        for (std::size_t t = 0; t < L_; ++t) den_inv_[t] = F.neg(F.inv(F.mul(lead, rising(F, t, M))));

        S_.assign(runs_, Vec(L_, 0));
        x_.assign(runs_, Vec(L_, 0));
        for (std::size_t t = 0; t < std::min(L_, qs_[0].size()); ++t) S_[0][t] = qs_[0][t];
        // Initial values g_{v-1} = 1 enter through w_i(j) = rising(j, i) g_{j+i}.
        for (std::size_t v = 1; v < runs_; ++v)
            for (std::size_t i = 0; i + 1 <= v && i <= M; ++i) {
                const std::size_t j = v - 1 - i;
                const Elem w = rising(F, j, i);
                const Poly& Qi = qs_[1 + i];
                for (std::size_t u = 0; u < Qi.size() && j + u < L_; ++u)
                    S_[v][j + u] = F.add(S_[v][j + u], F.mul(w, Qi[u]));
            }
    }

    // g for each run, k coefficients in Z.
    std::vector<Poly> run()
    {
        const std::size_t T = std::bit_ceil(L_);
        solve(0, T);
        std::vector<Poly> out;
        for (std::size_t v = 0; v < runs_; ++v) {
            Vec g(k_, 0);
            if (v > 0) g[v - 1] = 1;
            std::copy(x_[v].begin(), x_[v].end(), g.begin() + static_cast<std::ptrdiff_t>(M_));
            out.emplace_back(std::move(g));
        }
        return out;
    }

  private:
    const Vec& kernel_hat(std::size_t N, std::size_t i)
    {
        auto& slot = khat_[std::countr_zero(N)];
        if (slot.empty()) {
            for (std::size_t ii = 0; ii <= M_; ++ii) {
                Vec h(N, 0);
                std::copy_n(kern_[ii].begin(), std::min(N, L_), h.begin());
                ntt(F_, h, false);
                slot.push_back(std::move(h));
            }
        }
        return slot[i];
    }

    void solve(std::size_t l, std::size_t r)
    {
        if (l >= L_) return;
        const std::size_t hi = std::min(r, L_);
        if (r - l <= kNaiveBlock) {
            for (std::size_t t = l; t < hi; ++t) {
                for (std::size_t v = 0; v < runs_; ++v) x_[v][t] = F_.mul(S_[v][t], den_inv_[t]);
                for (std::size_t i = 0; i <= M_; ++i) {
                    for (std::size_t t2 = t + 1; t2 < hi; ++t2) {
                        const Elem c = kern_[i][t2 - t];
                        if (c == 0) continue;
                        const Elem cs = F_.mul(c, scale_[i][t]);
                        for (std::size_t v = 0; v < runs_; ++v) S_[v][t2] = F_.add(S_[v][t2], F_.mul(cs, x_[v][t]));
                    }
                }
            }
            return;
        }
        const std::size_t mid = (l + r) / 2;
        solve(l, mid);
        if (mid < L_) {
            const std::size_t N = r - l;
            Vec acc(N), buf(N);
            for (std::size_t v = 0; v < runs_; ++v) {
                std::fill(acc.begin(), acc.end(), 0);
                for (std::size_t i = 0; i <= M_; ++i) {
                    std::fill(buf.begin(), buf.end(), 0);
                    for (std::size_t t = l; t < mid; ++t) buf[t - l] = F_.mul(scale_[i][t], x_[v][t]);
                    ntt(F_, buf, false);
                    const Vec& kh = kernel_hat(N, i);
                    for (std::size_t e = 0; e < N; ++e) acc[e] = F_.add(acc[e], F_.mul(buf[e], kh[e]));
                }
                ntt(F_, acc, true);
                for (std::size_t t = mid; t < hi; ++t) S_[v][t] = F_.add(S_[v][t], acc[t - l]);
            }
        }
        solve(mid, r);
    }

    const PrimeField& F_;
    const std::vector<Poly>& qs_;
    std::size_t M_, k_, L_, runs_;
    std::vector<Vec> kern_, scale_;
    Vec den_inv_;
    std::vector<Vec> S_, x_;
    std::vector<Vec> khat_[64];
};

std::optional<AffineSpace> solve_series(const PrimeField& F, const DiffForm& q, std::size_t k)
{
    const int top = q.top_y_index();
    if (top < 0) return std::nullopt;
    const std::size_t M = static_cast<std::size_t>(top);
    if (k <= M || F.modulus() <= k + M) return std::nullopt;
    if (!ntt_supported(F, std::bit_ceil(k - M))) return std::nullopt;

    const Poly& lead = q.y(M);
    std::optional<Elem> point;
    for (Elem a = 0; a < F.modulus() && a <= static_cast<Elem>(lead.size()); ++a)
        if (eval(F, lead, a) != 0) {
            point = a;
            break;
        }
    if (!point) return std::nullopt;
    const Elem a = *point;

    std::vector<Poly> qs(M + 2);
    for (std::size_t c = 0; c < M + 2; ++c) qs[c] = taylor_shift(F, q[c], a);
    SeriesSolver solver(F, qs, M, k);
    std::vector<Poly> g = solver.run();

    // Remaining equations: coefficients k-M and up of the residual.
    DiffForm hom(qs);
    hom.free_part() = Poly{};
    std::vector<Poly> res(g.size());
    res[0] = apply_to_poly(F, DiffForm(qs), g[0]);
    for (std::size_t v = 1; v < g.size(); ++v) res[v] = apply_to_poly(F, hom, g[v]);
    std::size_t top_coeff = 0;
    for (const Poly& r : res) top_coeff = std::max(top_coeff, r.size());

    const std::size_t L = k - M;
    for (const Poly& r : res)
        for (std::size_t t = 0; t < std::min(L, r.size()); ++t)
            if (r[t] != 0) throw std::logic_error("series recurrence left a low residual");

    std::vector<Vec> rows;
    for (std::size_t t = L; t < top_coeff; ++t) {
        Vec row(M + 1);
        for (std::size_t v = 1; v <= M; ++v) row[v - 1] = res[v][t];
        row[M] = F.neg(res[0][t]);
        rows.push_back(std::move(row));
    }
    std::vector<Poly> gens(g.begin() + 1, g.end());
    AffineSpace local = from_solution(F, k, solve_linear(F, std::move(rows), M), gens, g[0]);
    if (local.is_empty()) return local;

    const Elem back = F.neg(a);
    std::vector<Poly> basis;
    for (const Poly& b : local.basis) basis.push_back(taylor_shift(F, b, back));
    return AffineSpace::make(F, k, taylor_shift(F, *local.offset, back), basis);
}

}  // namespace

AffineSpace AffineSpace::make(const PrimeField& F, std::size_t k, const Poly& offset, const std::vector<Poly>& spanning)
{
    std::vector<Vec> rows;
    for (const Poly& p : spanning) {
        if (p.degree() >= static_cast<int>(k)) throw ParamError("basis polynomial degree too large");
        rows.push_back(padded(p, k));
    }
    if (offset.degree() >= static_cast<int>(k)) throw ParamError("offset degree too large");

    // Row reduction with columns taken from the top degree down.
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = k; c-- > 0 && r < rows.size();) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        const Elem inv = F.inv(rows[r][c]);
        for (std::size_t t = 0; t <= c; ++t) rows[r][t] = F.mul(rows[r][t], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Elem f = rows[i][c];
            for (std::size_t t = 0; t <= c; ++t) rows[i][t] = F.sub(rows[i][t], F.mul(f, rows[r][t]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);

    Vec off = padded(offset, k);
    for (std::size_t i = 0; i < r; ++i) {
        const Elem f = off[pivots[i]];
        if (f == 0) continue;
        for (std::size_t t = 0; t <= pivots[i]; ++t) off[t] = F.sub(off[t], F.mul(f, rows[i][t]));
    }

    AffineSpace A;
    A.k = k;
    A.offset = Poly(std::move(off));
    for (std::size_t i = r; i-- > 0;) A.basis.emplace_back(std::move(rows[i]));
    return A;
}

AffineSpace AffineSpace::everything(const PrimeField& F, std::size_t k)
{
    std::vector<Poly> mono;
    for (std::size_t j = 0; j < k; ++j) mono.push_back(Poly::monomial(1, j));
    return make(F, k, Poly{}, mono);
}

Poly AffineSpace::point(const PrimeField& F, const std::vector<Elem>& c) const
{
    if (is_empty()) throw ParamError("empty affine space");
    if (c.size() != basis.size()) throw ParamError("coefficient count must equal the dimension");
    Poly acc = *offset;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) acc = add(F, acc, scale(F, basis[i], c[i]));
    return acc;
}

bool AffineSpace::contains(const PrimeField& F, const Poly& f) const
{
    if (is_empty() || f.degree() >= static_cast<int>(k)) return false;
    // Canonical form: the coordinates are the coefficients at the basis degrees.
    Poly rest = sub(F, f, *offset);
    for (std::size_t i = basis.size(); i-- > 0;) {
        const Elem c = rest[static_cast<std::size_t>(basis[i].degree())];
        if (c != 0) rest = sub(F, rest, scale(F, basis[i], c));
    }
    return rest.is_zero();
}

AffineSpace solve_de(const PrimeField& F, const DiffForm& q, std::size_t k, DeMethod method)
{
    if (q.is_zero()) throw ParamError("degenerate equation");
    if (k == 0) throw ParamError("degree bound must be positive");

    std::optional<AffineSpace> out;
    if (method == DeMethod::series || (method == DeMethod::automatic && k >= kSeriesMin)) {
        out = solve_series(F, q, k);
        if (!out && method == DeMethod::series) throw ParamError("series solver preconditions not met");
    }
    if (!out) out = solve_dense(F, q, k);

    const int top = q.top_y_index();
    if (top >= 0 && F.modulus() > k + q.m() && out->dimension() > static_cast<std::size_t>(top))
        throw std::logic_error("solution space dimension exceeds the top Y-index");
    return *out;
}

AffineSpace affine_constrain(const PrimeField& F, const AffineSpace& A, Elem alpha, const Symbol& beta)
{
    if (A.is_empty()) return A;
    const std::size_t s = beta.size(), d = A.dimension();
    const Vec base = eval_derivs(F, *A.offset, alpha, s);
    std::vector<Vec> rows(s, Vec(d + 1, 0));
    for (std::size_t i = 0; i < d; ++i) {
        const Vec e = eval_derivs(F, A.basis[i], alpha, s);
        for (std::size_t t = 0; t < s; ++t) rows[t][i] = e[t];
    }
    for (std::size_t t = 0; t < s; ++t) rows[t][d] = F.sub(beta[t], base[t]);
    return from_solution(F, A.k, solve_linear(F, std::move(rows), d), A.basis, *A.offset);
}

EvalMap affine_member_at(const PrimeField& F, const AffineSpace& A, Elem alpha, std::size_t s)
{
    EvalMap out;
    if (A.is_empty() || A.dimension() == 0) return out;
    std::vector<Vec> cols;
    for (const Poly& b : A.basis) cols.push_back(eval_derivs(F, b, alpha, s));
    std::vector<Vec> rows(s, Vec(A.dimension() + 1, 0));
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t t = 0; t < s; ++t) rows[t][i] = cols[i][t];
    const LinearSolution sol = solve_linear(F, std::move(rows), A.dimension());
    out.rank = A.dimension() - sol.kernel.size();
    out.constant = out.rank == 0;
    return out;
}

}  // namespace mcrec
