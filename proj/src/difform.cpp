#include "mcrec/difform.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcrec {

DiffForm::DiffForm(std::vector<Poly> comps) : comps_(std::move(comps))
{
    if (comps_.size() < 2) comps_.resize(2);
}

DiffForm DiffForm::y_free(std::size_t m, Poly p)
{
    DiffForm q(m);
    q.comps_[0] = std::move(p);
    return q;
}

DiffForm DiffForm::y_term(std::size_t m, std::size_t i, Poly c)
{
    if (i > m) throw std::out_of_range("Y index exceeds m");
    DiffForm q(m);
    q.comps_[i + 1] = std::move(c);
    return q;
}

int DiffForm::x_degree() const noexcept
{
    int d = kZeroDegree;
    for (const auto& c : comps_) d = std::max(d, c.degree());
    return d;
}

bool DiffForm::is_zero() const noexcept
{
    return std::all_of(comps_.begin(), comps_.end(), [](const Poly& p) { return p.is_zero(); });
}

int DiffForm::top_y_index() const noexcept
{
    for (std::size_t j = comps_.size(); j-- > 1;)
        if (!comps_[j].is_zero()) return static_cast<int>(j) - 1;
    return -1;
}

DiffForm DiffForm::widened(std::size_t new_m) const
{
    if (static_cast<int>(new_m) < top_y_index()) throw std::out_of_range("cannot narrow below a nonzero Y term");
    std::vector<Poly> c(comps_.begin(), comps_.begin() + static_cast<std::ptrdiff_t>(std::min(comps_.size(), new_m + 2)));
    c.resize(new_m + 2);
    return DiffForm(std::move(c));
}

namespace {

template <class Op>
DiffForm zip(const DiffForm& a, const DiffForm& b, Op op)
{
    std::size_t w = std::max(a.width(), b.width());
    std::vector<Poly> c(w);
    Poly zero;
    for (std::size_t j = 0; j < w; ++j) c[j] = op(j < a.width() ? a[j] : zero, j < b.width() ? b[j] : zero);
    return DiffForm(std::move(c));
}

}  // namespace

DiffForm add(const PrimeField& F, const DiffForm& a, const DiffForm& b)
{
    return zip(a, b, [&](const Poly& x, const Poly& y) { return add(F, x, y); });
}

DiffForm sub(const PrimeField& F, const DiffForm& a, const DiffForm& b)
{
    return zip(a, b, [&](const Poly& x, const Poly& y) { return sub(F, x, y); });
}

DiffForm scale(const PrimeField& F, const DiffForm& a, Elem c)
{
    std::vector<Poly> r(a.width());
    for (std::size_t j = 0; j < a.width(); ++j) r[j] = scale(F, a[j], c);
    return DiffForm(std::move(r));
}

DiffForm mul(const PrimeField& F, const Poly& g, const DiffForm& a)
{
    std::vector<Poly> r(a.width());
    for (std::size_t j = 0; j < a.width(); ++j) r[j] = mul(F, g, a[j]);
    return DiffForm(std::move(r));
}

DiffForm mod(const PrimeField& F, const DiffForm& a, const Poly& m)
{
    std::vector<Poly> r(a.width());
    for (std::size_t j = 0; j < a.width(); ++j) r[j] = mod(F, a[j], m);
    return DiffForm(std::move(r));
}

DiffForm tau(const PrimeField& F, const DiffForm& q)
{
    DiffForm r(q.m() + 1);
    r.free_part() = derivative(F, q.free_part());
    for (std::size_t i = 0; i <= q.m(); ++i) {
        r.y(i) = add(F, r.y(i), derivative(F, q.y(i)));
        r.y(i + 1) = q.y(i);
    }
    return r;
}

Elem evaluate(const PrimeField& F, const DiffForm& q, Elem alpha, std::span<const Elem> beta)
{
    Elem v = eval(F, q.free_part(), alpha);
    for (std::size_t i = 0; i <= q.m(); ++i) {
        if (q.y(i).is_zero()) continue;
        if (i >= beta.size()) throw PolyError("tuple too short");
        v = F.add(v, F.mul(eval(F, q.y(i), alpha), beta[i]));
    }
    return v;
}

std::vector<Elem> tau_vector(const PrimeField& F, const DiffForm& q, Elem alpha, std::span<const Elem> beta,
                             std::size_t len)
{
    if (len == 0) return {};
    if (q.m() + len > beta.size()) throw PolyError("tuple too short");
    // binom[t][u] for t < len
    std::vector<std::vector<Elem>> binom(len);
    for (std::size_t t = 0; t < len; ++t) {
        binom[t].assign(t + 1, 1);
        for (std::size_t u = 1; u < t; ++u) binom[t][u] = F.add(binom[t - 1][u - 1], binom[t - 1][u]);
    }
    std::vector<Elem> out = eval_derivs(F, q.free_part(), alpha, len);
    for (std::size_t i = 0; i <= q.m(); ++i) {
        if (q.y(i).is_zero()) continue;
        std::vector<Elem> d = eval_derivs(F, q.y(i), alpha, len);
        for (std::size_t t = 0; t < len; ++t) {
            Elem acc = 0;
            for (std::size_t u = 0; u <= t; ++u) acc = F.add(acc, F.mul(binom[t][u], F.mul(d[t - u], beta[i + u])));
            out[t] = F.add(out[t], acc);
        }
    }
    return out;
}

Poly apply_to_poly(const PrimeField& F, const DiffForm& q, const Poly& f)
{
    Poly r = q.free_part();
    Poly fd = f;
    for (std::size_t i = 0; i <= q.m(); ++i) {
        if (i > 0) fd = derivative(F, fd);
        if (fd.is_zero()) break;
        if (!q.y(i).is_zero()) r = add(F, r, mul(F, q.y(i), fd));
    }
    return r;
}

}  // namespace mcrec
