// Minimal basis of the tau-condition module by divide and conquer over points.
//
// A form Q meets every tau-condition of (alpha, beta) exactly when
// Q . (1, f, f', ..., f^(m)) = 0 mod (X - alpha)^(s-m) for any f whose first s
// derivatives at alpha are beta. With one Hermite interpolant per list slot,
// the conditions at all points become Q . G = 0 mod (X - alpha)^(s-m), G of
// size (m+2) x ell. The left half of the points is solved first; the right
// half then only sees G premultiplied by that basis, with shifted degrees.

#include <memory>

#include "mcrec/lattice.hpp"

namespace mcrec {

namespace {

struct Tree {
    std::size_t lo = 0, hi = 0;
    Poly mod;
    std::unique_ptr<Reducer> reducer;
    std::unique_ptr<Tree> left, right;

    bool leaf() const { return hi - lo == 1; }
};

std::unique_ptr<Tree> build_tree(const PrimeField& F, const std::vector<Elem>& pts, std::size_t lo, std::size_t hi,
                                 std::size_t e, bool with_reducer)
{
    auto t = std::make_unique<Tree>();
    t->lo = lo;
    t->hi = hi;
    if (hi - lo == 1) {
        t->mod = linear_power(F, pts[lo], e);
    } else {
        std::size_t mid = lo + (hi - lo) / 2;
        t->left = build_tree(F, pts, lo, mid, e, with_reducer);
        t->right = build_tree(F, pts, mid, hi, e, with_reducer);
        t->mod = mul(F, t->left->mod, t->right->mod);
    }
    if (with_reducer && hi - lo > 1) t->reducer = std::make_unique<Reducer>(F, t->mod);
    return t;
}

// f mod (X - alpha)^e as a polynomial in Z = X - alpha, padded to e coefficients.
std::vector<Elem> local_coeffs(const PrimeField& F, const Poly& f, Elem alpha, std::size_t e)
{
    std::vector<Elem> c = taylor_shift(F, f, alpha).coeffs();
    c.resize(e, 0);
    return c;
}

// c_j(Z) * d(Z) mod Z^e
std::vector<Elem> mul_trunc(const PrimeField& F, const std::vector<Elem>& a, const std::vector<Elem>& b, std::size_t e)
{
    std::vector<Elem> out(e, 0);
    for (std::size_t i = 0; i < std::min(e, a.size()); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < e && j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
    return out;
}

/// Hermite interpolants: for each slot j, H_j with H_j^(t)(alpha) = lists[a][j][t]
/// for every point alpha = pts[a] and t < s. Linear-combination CRT over the
/// product tree of (X - alpha)^s.
std::vector<Poly> hermite_interpolants(const PrimeField& F, const std::vector<Elem>& pts,
                                       const std::vector<std::vector<Symbol>>& lists, std::size_t s, std::size_t ell)
{
    auto tree = build_tree(F, pts, 0, pts.size(), s, false);

    // Weight of each leaf: (T / (X - alpha)^s) mod (X - alpha)^s, pushed down the tree.
    std::vector<std::vector<Elem>> weights(pts.size());
    auto descend = [&](auto&& self, const Tree& t, const Poly& acc) -> void {
        if (t.leaf()) {
            weights[t.lo] = local_coeffs(F, acc, pts[t.lo], s);
            return;
        }
        self(self, *t.left, mod(F, mul(F, acc, t.right->mod), t.left->mod));
        self(self, *t.right, mod(F, mul(F, acc, t.left->mod), t.right->mod));
    };
    descend(descend, *tree, Poly::constant(1));

    std::vector<Elem> inv_fact(s, 1);
    for (std::size_t t = 1; t < s; ++t) inv_fact[t] = F.mul(inv_fact[t - 1], F.inv(F.reduce(t)));

    std::vector<std::vector<Poly>> leaf_vals(ell, std::vector<Poly>(pts.size()));
    for (std::size_t a = 0; a < pts.size(); ++a) {
        Poly winv(series_inverse(F, Poly(weights[a]), s));
        std::vector<Elem> wi = winv.coeffs();
        for (std::size_t j = 0; j < ell; ++j) {
            std::vector<Elem> taylor(s);
            for (std::size_t t = 0; t < s; ++t) taylor[t] = F.mul(lists[a][j][t], inv_fact[t]);
            std::vector<Elem> u = mul_trunc(F, taylor, wi, s);
            leaf_vals[j][a] = taylor_shift(F, Poly(std::move(u)), F.neg(pts[a]));
        }
    }

    auto combine = [&](auto&& self, const Tree& t, std::size_t j) -> Poly {
        if (t.leaf()) return leaf_vals[j][t.lo];
        Poly l = self(self, *t.left, j);
        Poly r = self(self, *t.right, j);
        return add(F, mul(F, l, t.right->mod), mul(F, r, t.left->mod));
    };
    std::vector<Poly> H(ell);
    for (std::size_t j = 0; j < ell; ++j) H[j] = combine(combine, *tree, j);
    return H;
}

struct Solved {
    PolyMatrix basis;
    std::vector<long> degrees;  // shifted row degrees
};

// Order basis at a single point, by iterative pivoting on the discrepancies.
Solved solve_leaf(const PrimeField& F, Elem alpha, const PolyMatrix& G, std::size_t sigma, std::vector<long> shift)
{
    const std::size_t r = G.size(), ell = G.front().size();
    using Coeffs = std::vector<Elem>;
    std::vector<std::vector<Coeffs>> res(r, std::vector<Coeffs>(ell));
    std::vector<std::vector<Coeffs>> P(r, std::vector<Coeffs>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < ell; ++j) res[i][j] = local_coeffs(F, G[i][j], alpha, sigma);
        P[i][i] = {1};
    }

    for (std::size_t d = 0; d < sigma; ++d) {
        for (std::size_t j = 0; j < ell; ++j) {
            long piv = -1;
            for (std::size_t i = 0; i < r; ++i) {
                if (res[i][j][d] == 0) continue;
                if (piv < 0 || shift[i] < shift[static_cast<std::size_t>(piv)]) piv = static_cast<long>(i);
            }
            if (piv < 0) continue;
            const std::size_t pv = static_cast<std::size_t>(piv);
            const Elem pinv = F.inv(res[pv][j][d]);
            for (std::size_t i = 0; i < r; ++i) {
                if (i == pv || res[i][j][d] == 0) continue;
                Elem c = F.mul(res[i][j][d], pinv);
                for (std::size_t k = 0; k < r; ++k) {
                    const Coeffs& src = P[pv][k];
                    Coeffs& dst = P[i][k];
                    if (dst.size() < src.size()) dst.resize(src.size(), 0);
                    for (std::size_t e = 0; e < src.size(); ++e) dst[e] = F.sub(dst[e], F.mul(c, src[e]));
                }
                for (std::size_t jj = 0; jj < ell; ++jj)
                    for (std::size_t e = d; e < sigma; ++e)
                        res[i][jj][e] = F.sub(res[i][jj][e], F.mul(c, res[pv][jj][e]));
            }
            for (std::size_t k = 0; k < r; ++k)
                if (!P[pv][k].empty()) P[pv][k].insert(P[pv][k].begin(), 0);
            for (std::size_t jj = 0; jj < ell; ++jj) {
                res[pv][jj].insert(res[pv][jj].begin(), 0);
                res[pv][jj].pop_back();
            }
            ++shift[pv];
        }
    }

    Solved out;
    out.basis.assign(r, std::vector<Poly>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k)
            if (!P[i][k].empty()) out.basis[i][k] = taylor_shift(F, Poly(std::move(P[i][k])), F.neg(alpha));
    out.degrees = std::move(shift);
    return out;
}

// Leaves read G through a Taylor expansion, so they take it unreduced.
PolyMatrix reduce_entries(const Tree& t, PolyMatrix G)
{
    if (t.leaf()) return G;
    for (auto& row : G)
        for (auto& e : row) e = t.reducer->reduce(e);
    return G;
}

Solved solve_node(const PrimeField& F, const std::vector<Elem>& pts, const Tree& t, const PolyMatrix& G,
                  std::size_t sigma, std::vector<long> shift)
{
    if (t.leaf()) return solve_leaf(F, pts[t.lo], G, sigma, std::move(shift));
    Solved L = solve_node(F, pts, *t.left, reduce_entries(*t.left, G), sigma, std::move(shift));
    PolyMatrix GR = reduce_entries(*t.right, mat_mul(F, L.basis, reduce_entries(*t.right, G)));
    Solved R = solve_node(F, pts, *t.right, GR, sigma, L.degrees);
    return {mat_mul(F, R.basis, L.basis), std::move(R.degrees)};
}

}  // namespace

ReducedBasis tau_module_basis(const PrimeField& F, const ReceivedWord& word, std::size_t s, std::size_t m,
                              std::size_t ell)
{
    check_basis_params(F, s, m, ell);
    if (s >= F.modulus()) throw ParamError("tau-module interpolation needs s < p");
    if (word.coords.empty()) throw ParamError("received word has no coordinates");
    const std::size_t sigma = s - m, r = m + 2;

    std::vector<Elem> pts;
    std::vector<std::vector<Symbol>> lists;
    for (const auto& c : word.coords) {
        pts.push_back(c.alpha);
        lists.push_back(normalized_options(c.options, ell));
        for (const auto& b : lists.back())
            if (b.size() != s) throw ParamError("tuple length must equal s");
    }

    auto tree = build_tree(F, pts, 0, pts.size(), sigma, true);
    std::vector<Poly> H = hermite_interpolants(F, pts, lists, s, ell);
    PolyMatrix G(r, std::vector<Poly>(ell));
    for (std::size_t j = 0; j < ell; ++j) {
        G[0][j] = Poly::constant(1);
        Poly d = H[j];
        for (std::size_t i = 0; i <= m; ++i) {
            if (i > 0) d = derivative(F, d);
            G[i + 1][j] = tree->reducer->reduce(d);
        }
    }

    Solved S = solve_node(F, pts, *tree, reduce_entries(*tree, G), sigma, std::vector<long>(r, 0));
    ReducedBasis out;
    out.rows = std::move(S.basis);
    for (long d : S.degrees) out.degrees.push_back(static_cast<std::size_t>(d));
    return out;
}

}  // namespace mcrec
