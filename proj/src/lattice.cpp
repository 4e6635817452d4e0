#include "mcrec/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>

#include "mcrec/parallel.hpp"

namespace mcrec {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::atomic<bool>& crt_fault()
{
    static std::atomic<bool> on{false};
    return on;
}

}  // namespace

// n (s-m) (m+2) above which the automatic method leaves the good basis.
std::size_t GoodBasis::det_degree() const
{
    std::size_t d = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) d += static_cast<std::size_t>(std::max(0, diagonal(i).degree()));
    return d;
}

std::vector<Symbol> normalized_options(const std::vector<Symbol>& options, std::size_t ell)
{
    std::vector<Symbol> out;
    for (const auto& o : options)
        if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(o);
    if (out.empty()) throw ParamError("empty candidate list");
    if (out.size() > ell) throw ParamError("candidate list longer than ell");
    while (out.size() < ell) out.push_back(out.front());
    return out;
}

void check_basis_params(const PrimeField& F, std::size_t s, std::size_t m, std::size_t ell)
{
    if (ell == 0) throw ParamError("ell must be at least 1");
    if (m + 1 > s) throw ParamError("m must be at most s-1");
    if (m + 1 < ell) throw ParamError("m must be at least ell-1");
    if (s - m >= F.modulus()) throw ParamError("characteristic must exceed s-m");
}

GoodBasis single_point_basis(const PrimeField& F, Elem alpha, const std::vector<Symbol>& options, std::size_t s,
                             std::size_t m, std::size_t ell)
{
    check_basis_params(F, s, m, ell);
    const auto E = normalized_options(options, ell);
    for (const auto& b : E)
        if (b.size() != s) throw ParamError("tuple length must equal s");
    const std::size_t sigma = s - m;
    const Poly lin{F.neg(alpha), 1};

    // falling[j][t] = j (j-1) ... (j-t+1)
    std::vector<std::vector<Elem>> falling(sigma, std::vector<Elem>(sigma, 0));
    for (std::size_t j = 0; j < sigma; ++j) {
        falling[j][0] = 1;
        for (std::size_t t = 1; t <= j; ++t) falling[j][t] = F.mul(falling[j][t - 1], F.reduce(j - t + 1));
    }

    // Rows with diagonal (X - alpha)^(L-1), indexed by their top Y index.
    std::vector<DiffForm> cur(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        std::vector<Elem> vals(sigma);
        for (std::size_t j = 0; j < sigma; ++j) vals[j] = F.neg(E[0][i + j]);
        cur[i] = DiffForm::y_term(m, i, Poly{1});
        cur[i].free_part() = taylor_at(F, alpha, vals);
    }

    for (std::size_t L = 2; L <= ell; ++L) {
        const auto& beta = E[L - 1];
        std::vector<DiffForm> next(m + 1);
        for (std::size_t i = L - 1; i <= m; ++i) {
            const DiffForm& prev = cur[i - 1];
            DiffForm raised = tau(F, mul(F, lin, prev)).widened(m);
            // tau^(j) of (X-a)^t B' at alpha is falling(j,t) tau^(j-t) of B', and the
            // vector of raised is (j+1) times that of B'.
            auto w0 = tau_vector(F, prev, alpha, beta, sigma);
            std::size_t r = 0;
            while (r < sigma && w0[r] == 0) ++r;
            if (r == sigma) {
                next[i] = std::move(raised);
                continue;
            }
            std::vector<Elem> c(sigma - r);
            for (std::size_t t = 0; t < c.size(); ++t) {
                std::size_t j = r + t;
                Elem acc = F.mul(F.reduce(j + 1), w0[j]);
                for (std::size_t u = 0; u < t; ++u) acc = F.sub(acc, F.mul(c[u], F.mul(falling[j][u], w0[j - u])));
                c[t] = F.div(acc, F.mul(falling[j][t], w0[r]));
            }
            Poly corr = taylor_shift(F, Poly(std::move(c)), F.neg(alpha));
            next[i] = sub(F, raised, mul(F, corr, prev));
        }
        cur = std::move(next);
    }

    GoodBasis B;
    B.s = s;
    B.m = m;
    B.ell = ell;
    B.points = {alpha};
    B.modulus = linear_power(F, alpha, sigma);
    B.rows.reserve(m + 2);
    B.rows.push_back(DiffForm::y_free(m, B.modulus));
    for (std::size_t i = 0; i <= m; ++i)
        B.rows.push_back(i + 1 < ell ? DiffForm::y_term(m, i, B.modulus) : std::move(cur[i]));
    return B;
}

GoodBasis combine_bases(const PrimeField& F, const GoodBasis& U, const GoodBasis& V)
{
    if (U.empty()) return V;
    if (V.empty()) return U;
    if (U.s != V.s || U.m != V.m || U.ell != V.ell) throw ParamError("bases built with different parameters");
    std::vector<Elem> pts = U.points;
    pts.insert(pts.end(), V.points.begin(), V.points.end());
    {
        std::vector<Elem> sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParamError("point sets overlap");
    }

    const Poly& PU = U.modulus;
    const Poly& PV = V.modulus;
    const Poly inv = invmod(F, PU, PV);
    const Reducer RU(F, PU), RV(F, PV);

    GoodBasis W;
    W.s = U.s;
    W.m = U.m;
    W.ell = U.ell;
    W.points = std::move(pts);
    W.modulus = mul(F, PU, PV);
    W.rows.assign(U.width(), DiffForm(U.m));
    for (std::size_t i = 0; i < U.width(); ++i) {
        const Poly& du = U.diagonal(i);
        const Poly& dv = V.diagonal(i);
        W.rows[i][i] = mul(F, du, dv);
        for (std::size_t j = 0; j < i; ++j) {
            Poly a = RU.reduce(mul(F, U.rows[i][j], dv));
            if (crt_fault().load(std::memory_order_relaxed)) a = neg(F, a);
            Poly b = RV.reduce(mul(F, V.rows[i][j], du));
            if (a.is_zero() && b.is_zero()) continue;
            W.rows[i][j] = crt_pair_with_inverse(F, a, PU, b, PV, inv);
        }
    }
    return W;
}

namespace {

GoodBasis build_range(const PrimeField& F, const ReceivedWord& word, std::size_t lo, std::size_t hi, std::size_t s,
                      std::size_t m, std::size_t ell, std::size_t forks)
{
    if (hi - lo == 1) return single_point_basis(F, word.coords[lo].alpha, word.coords[lo].options, s, m, ell);
    std::size_t mid = lo + (hi - lo) / 2;
    if (forks > 0) {
        auto left = std::async(std::launch::async, build_range, std::cref(F), std::cref(word), lo, mid, s, m, ell,
                               forks - 1);
        GoodBasis right = build_range(F, word, mid, hi, s, m, ell, forks - 1);
        return combine_bases(F, left.get(), right);
    }
    return combine_bases(F, build_range(F, word, lo, mid, s, m, ell, 0), build_range(F, word, mid, hi, s, m, ell, 0));
}

}  // namespace

GoodBasis build_basis(const PrimeField& F, const ReceivedWord& word, std::size_t s, std::size_t m, std::size_t ell)
{
    check_basis_params(F, s, m, ell);
    if (word.coords.empty()) throw ParamError("received word has no coordinates");
    return build_range(F, word, 0, word.coords.size(), s, m, ell, fork_depth());
}

bool lattice_membership(const PrimeField& F, const GoodBasis& B, const DiffForm& R)
{
    if (R.top_y_index() > static_cast<int>(B.m)) return false;
    DiffForm rest = R.widened(B.m);
    for (std::size_t j = B.width(); j-- > 0;) {
        if (rest[j].is_zero()) continue;
        auto [q, r] = divrem(F, rest[j], B.diagonal(j));
        if (!r.is_zero()) return false;
        rest = sub(F, rest, mul(F, q, B.rows[j]));
    }
    return rest.is_zero();
}

bool satisfies_tau_conditions(const PrimeField& F, const DiffForm& q, Elem alpha, const std::vector<Symbol>& options,
                              std::size_t s, std::size_t m)
{
    for (const auto& beta : options) {
        auto v = tau_vector(F, q, alpha, beta, s - m);
        if (std::any_of(v.begin(), v.end(), [](Elem x) { return x != 0; })) return false;
    }
    return true;
}

bool satisfies_tau_conditions(const PrimeField& F, const DiffForm& q, const ReceivedWord& word, std::size_t s,
                              std::size_t m)
{
    return std::all_of(word.coords.begin(), word.coords.end(), [&](const ReceivedCoordinate& c) {
        return satisfies_tau_conditions(F, q, c.alpha, c.options, s, m);
    });
}

int row_degree(const std::vector<Poly>& row)
{
    int d = kZeroDegree;
    for (const auto& p : row) d = std::max(d, p.degree());
    return d;
}

PolyMatrix to_matrix(const GoodBasis& B)
{
    PolyMatrix M;
    M.reserve(B.rows.size());
    for (const auto& r : B.rows) M.push_back(r.comps());
    return M;
}

namespace {

using Coeffs = std::vector<Elem>;

void trim(Coeffs& c)
{
    while (!c.empty() && c.back() == 0) c.pop_back();
}

int deg_of(const Coeffs& c) { return c.empty() ? kZeroDegree : static_cast<int>(c.size()) - 1; }

struct Lead {
    int deg = kZeroDegree;
    std::size_t pivot = 0;
};

Lead lead_of(const std::vector<Coeffs>& row)
{
    Lead l;
    for (std::size_t j = 0; j < row.size(); ++j) {
        int d = deg_of(row[j]);
        if (d >= l.deg && d != kZeroDegree) {
            l.deg = d;
            l.pivot = j;
        }
    }
    return l;
}

// a -= c X^e b
void sub_shifted(const PrimeField& F, std::vector<Coeffs>& a, const std::vector<Coeffs>& b, Elem c, std::size_t e)
{
    for (std::size_t j = 0; j < a.size(); ++j) {
        const Coeffs& bj = b[j];
        if (bj.empty()) continue;
        Coeffs& aj = a[j];
        if (aj.size() < bj.size() + e) aj.resize(bj.size() + e, 0);
        for (std::size_t t = 0; t < bj.size(); ++t) aj[t + e] = F.sub(aj[t + e], F.mul(c, bj[t]));
        trim(aj);
    }
}

}  // namespace

void weak_popov_reduce(const PrimeField& F, PolyMatrix& rows)
{
    if (rows.empty()) return;
    const std::size_t cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols) throw PolyError("matrix not rectangular");

    std::vector<std::vector<Coeffs>> M;
    for (const auto& r : rows) {
        if (row_degree(r) == kZeroDegree) continue;
        std::vector<Coeffs> raw(cols);
        for (std::size_t j = 0; j < cols; ++j) raw[j] = r[j].coeffs();
        M.push_back(std::move(raw));
    }

    std::vector<long> owner(cols, -1);
    std::vector<std::size_t> work(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) work[i] = M.size() - 1 - i;
    std::vector<bool> dead(M.size(), false);

    while (!work.empty()) {
        std::size_t i = work.back();
        work.pop_back();
        for (;;) {
            Lead li = lead_of(M[i]);
            if (li.deg == kZeroDegree) {
                dead[i] = true;
                break;
            }
            long k = owner[li.pivot];
            if (k < 0) {
                owner[li.pivot] = static_cast<long>(i);
                break;
            }
            std::size_t ku = static_cast<std::size_t>(k);
            Lead lk = lead_of(M[ku]);
            // The row of larger degree is reduced; it keeps being processed
            // until its pivot is free.
            if (lk.deg > li.deg) {
                owner[li.pivot] = static_cast<long>(i);
                std::swap(i, ku);
                std::swap(li, lk);
            }
            Elem c = F.div(M[i][li.pivot].back(), M[ku][lk.pivot].back());
            sub_shifted(F, M[i], M[ku], c, static_cast<std::size_t>(li.deg - lk.deg));
        }
    }

    PolyMatrix out;
    for (std::size_t i = 0; i < M.size(); ++i) {
        if (dead[i]) continue;
        std::vector<Poly> r(cols);
        for (std::size_t j = 0; j < cols; ++j) r[j] = Poly(std::move(M[i][j]));
        out.push_back(std::move(r));
    }
    rows = std::move(out);
}

std::vector<Poly> shortest_vector(const PrimeField& F, PolyMatrix rows)
{
    weak_popov_reduce(F, rows);
    if (rows.empty()) throw PolyError("empty lattice");
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (row_degree(rows[i]) < row_degree(rows[best])) best = i;
    return rows[best];
}

void inject_crt_fault(bool on) noexcept { crt_fault().store(on); }

InterpolationMethod resolve_method(const PrimeField& F, std::size_t s, InterpolationMethod method)
{
    if (method != InterpolationMethod::automatic) return method;
    return s < F.modulus() ? InterpolationMethod::tau_module : InterpolationMethod::basis;
}

std::size_t det_degree_bound(std::size_t n, std::size_t s, std::size_t m, std::size_t ell, InterpolationMethod method)
{
    if (method == InterpolationMethod::tau_module) return n * ell * (s - m);
    return nice_basis_det_degree(n, s, m, ell);
}

Interpolation interpolate_difform(const PrimeField& F, const ReceivedWord& word, std::size_t s, std::size_t m,
                                  std::size_t ell, std::size_t /*k*/, InterpolationMethod method)
{
    check_basis_params(F, s, m, ell);
    method = resolve_method(F, s, method);

    Interpolation out;
    out.method = method;
    std::vector<Poly> v;
    const auto t0 = Clock::now();
    if (method == InterpolationMethod::basis) {
        GoodBasis B = build_basis(F, word, s, m, ell);
        out.det_degree = B.det_degree();
        out.basis_ms = elapsed_ms(t0);
        const auto t1 = Clock::now();
        v = shortest_vector(F, to_matrix(B));
        out.reduce_ms = elapsed_ms(t1);
    } else {
        ReducedBasis R = tau_module_basis(F, word, s, m, ell);
        out.basis_ms = elapsed_ms(t0);
        const auto t1 = Clock::now();
        std::size_t best = 0;
        for (std::size_t i = 0; i < R.rows.size(); ++i) {
            out.det_degree += R.degrees[i];
            if (row_degree(R.rows[i]) < row_degree(R.rows[best])) best = i;
        }
        v = std::move(R.rows[best]);
        out.reduce_ms = elapsed_ms(t1);
    }
    out.degree_bound = out.det_degree / (m + 2);
    out.q = DiffForm(std::move(v));
    return out;
}

std::size_t nice_basis_det_degree(std::size_t n, std::size_t s, std::size_t m, std::size_t ell)
{
    return n * ell * (s - m) + (m + 2 - ell) * n * (ell - 1);
}

std::size_t capture_threshold(std::size_t x_degree, std::size_t k, std::size_t s, std::size_t m)
{
    return (x_degree + k + (s - m) - 1) / (s - m);
}

}  // namespace mcrec
