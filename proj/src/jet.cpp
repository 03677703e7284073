#include <fsjet/jet.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace fsjet
{

namespace
{

void check_order(int order)
{
    if (order < 1 || order > kMaxOrder) {
        throw std::invalid_argument("MappingJet: order must be in [1, " + std::to_string(kMaxOrder) + "]");
    }
}

void check_same_dim(const MappingJet &f, const MappingJet &g)
{
    if (f.dim() != g.dim()) {
        throw std::invalid_argument("jet dimension mismatch: " + std::to_string(f.dim()) + " vs "
                                    + std::to_string(g.dim()));
    }
}

} // namespace

MappingJet::MappingJet(int dim, int order) : dim_(dim), order_(order)
{
    if (dim < 1) {
        throw std::invalid_argument("MappingJet: dimension must be positive");
    }
    check_order(order);
    for (int k = 2; k <= order; ++k) {
        polys_.emplace_back(k, dim, dim);
    }
}

MappingJet::MappingJet(int dim, int order, std::vector<HomPoly> polys) : MappingJet(dim, order)
{
    if (polys.size() > polys_.size()) {
        throw std::invalid_argument("MappingJet: more polynomials than the order allows");
    }
    for (auto &p : polys) {
        set_poly(std::move(p));
    }
}

const HomPoly &MappingJet::poly(int k) const
{
    if (k < 2 || k > order_) {
        throw std::out_of_range("MappingJet::poly: degree " + std::to_string(k) + " outside [2, order]");
    }
    return polys_[static_cast<std::size_t>(k - 2)];
}

void MappingJet::set_poly(HomPoly p)
{
    const int k = p.degree();
    if (k < 2 || k > order_) {
        throw std::invalid_argument("MappingJet::set_poly: degree " + std::to_string(k) + " outside [2, order]");
    }
    if (p.domain_dim() != dim_ || p.codomain_dim() != dim_) {
        throw std::invalid_argument("MappingJet::set_poly: polynomial dimension mismatch");
    }
    polys_[static_cast<std::size_t>(k - 2)] = std::move(p);
}

bool MappingJet::is_identity() const
{
    return std::ranges::all_of(polys_, [](const HomPoly &p) { return p.is_zero(); });
}

double MappingJet::max_coeff_abs() const
{
    double r = 0.0;
    for (const auto &p : polys_) {
        r = std::max(r, p.max_coeff_abs());
    }
    return r;
}

CVector MappingJet::eval(const CVector &x) const
{
    if (static_cast<int>(x.size()) != dim_) {
        throw std::invalid_argument("MappingJet::eval: expected argument of dimension " + std::to_string(dim_));
    }
    CVector r = x;
    for (const auto &p : polys_) {
        if (!p.is_zero()) {
            r += p.eval(x);
        }
    }
    return r;
}

CVector MappingJet::derivative_apply(const CVector &x, const CVector &v) const
{
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(v.size()) != dim_) {
        throw std::invalid_argument("MappingJet::derivative_apply: dimension mismatch");
    }
    CVector r = v;
    for (const auto &p : polys_) {
        if (p.is_zero()) {
            continue;
        }
        std::vector<CVector> args(static_cast<std::size_t>(p.degree()), x);
        args.back() = v;
        r += static_cast<double>(p.degree()) * p.multilinear_eval(args);
    }
    return r;
}

MappingJet MappingJet::truncated(int order) const
{
    MappingJet r(dim_, order);
    for (int k = 2; k <= std::min(order, order_); ++k) {
        r.set_poly(poly(k));
    }
    return r;
}

bool MappingJet::approx_equal(const MappingJet &o, Tolerance tol) const
{
    if (o.dim_ != dim_ || o.order_ != order_) {
        return false;
    }
    for (std::size_t i = 0; i < polys_.size(); ++i) {
        if (!polys_[i].approx_equal(o.polys_[i], tol)) {
            return false;
        }
    }
    return true;
}

VecSeries MappingJet::to_series(int max_degree) const
{
    VecSeries s(static_cast<std::size_t>(dim_), Series(dim_, max_degree));
    for (int i = 0; i < dim_; ++i) {
        s[static_cast<std::size_t>(i)] = Series::variable(dim_, max_degree, i);
    }
    for (const auto &p : polys_) {
        if (p.degree() > max_degree || p.is_zero()) {
            continue;
        }
        const VecSeries ps = p.to_series(max_degree);
        for (std::size_t c = 0; c < s.size(); ++c) {
            s[c] += ps[c];
        }
    }
    return s;
}

MappingJet MappingJet::from_series(const VecSeries &s, int order)
{
    const int dim = static_cast<int>(s.size());
    MappingJet r(dim, order);
    for (int k = 2; k <= order; ++k) {
        r.set_poly(HomPoly::from_series(s, k));
    }
    return r;
}

HomPoly compose_degree2(const MappingJet &f, const MappingJet &g)
{
    check_same_dim(f, g);
    if (std::min(f.order(), g.order()) < 2) {
        return HomPoly(2, f.dim(), f.dim());
    }
    return f.poly(2) + g.poly(2);
}

HomPoly compose_degree3(const MappingJet &f, const MappingJet &g)
{
    check_same_dim(f, g);
    if (std::min(f.order(), g.order()) < 3) {
        return HomPoly(3, f.dim(), f.dim());
    }
    return 2.0 * contract_last(f.poly(2), g.poly(2)) + f.poly(3) + g.poly(3);
}

MappingJet compose(const MappingJet &f, const MappingJet &g)
{
    check_same_dim(f, g);
    const int order = std::min(f.order(), g.order());
    const VecSeries gs = g.truncated(order).to_series(order);

    // f(y) = y + sum_k P_k(y) with y = g(x)
    VecSeries out = gs;
    for (int k = 2; k <= order; ++k) {
        const HomPoly &p = f.poly(k);
        if (p.is_zero()) {
            continue;
        }
        const VecSeries pk = substitute(p, gs);
        for (std::size_t c = 0; c < out.size(); ++c) {
            out[c] += pk[c];
        }
    }
    MappingJet r = MappingJet::from_series(out, order);

#ifndef NDEBUG
    if (order >= 3) {
        const Tolerance tol{1e-9, 1e-9};
        assert(r.poly(2).approx_equal(compose_degree2(f, g), tol));
        assert(r.poly(3).approx_equal(compose_degree3(f, g), tol));
    }
#endif
    return r;
}

MappingJet invert(const MappingJet &f)
{
    const int order = f.order();
    const int n = f.dim();
    MappingJet g(n, order);
    // Degree by degree: the degree-k part of f(g(x)) is Q_k + [sum_j P_j(g_{<k}(x))]_k,
    // where g_{<k} already holds Q_2..Q_{k-1}.
    for (int k = 2; k <= order; ++k) {
        const VecSeries gs = g.to_series(k);
        VecSeries acc(static_cast<std::size_t>(n), Series(n, k));
        for (int j = 2; j <= k; ++j) {
            const HomPoly &p = f.poly(j);
            if (p.is_zero()) {
                continue;
            }
            const VecSeries pj = substitute(p, gs);
            for (std::size_t c = 0; c < acc.size(); ++c) {
                acc[c] += pj[c];
            }
        }
        g.set_poly(-1.0 * HomPoly::from_series(acc, k));
    }
    return g;
}

MappingJet iterate(const MappingJet &f, int m)
{
    if (m == 0) {
        return MappingJet::identity(f.dim(), f.order());
    }
    if (m < 0) {
        return iterate(invert(f), -m);
    }
    MappingJet r = f;
    for (int i = 1; i < m; ++i) {
        r = compose(f, r);
    }
    return r;
}

MappingJet unitary_conjugate(const MappingJet &f, const LinOp &u, double tol)
{
    if (static_cast<int>(u.dim()) != f.dim()) {
        throw std::invalid_argument("unitary_conjugate: operator dimension mismatch");
    }
    const double res = u.unitarity_residual();
    if (!(res <= tol)) {
        throw std::invalid_argument("unitary_conjugate: operator is not unitary (residual "
                                    + std::to_string(res) + ")");
    }
    const LinOp uh = u.adjoint();
    const auto n = static_cast<std::size_t>(f.dim());
    std::vector<CVector> cols;
    for (std::size_t j = 0; j < n; ++j) {
        cols.push_back(u.column(j));
    }

    // Tensor entries transform as T'[e_i1..e_ik] = U* T[U e_i1, ..., U e_ik].
    MappingJet g(f.dim(), f.order());
    for (int k = 2; k <= f.order(); ++k) {
        const HomPoly &p = f.poly(k);
        HomPoly q(k, f.dim(), f.dim());
        if (!p.is_zero()) {
            HomPoly::Key key(static_cast<std::size_t>(k), 0);
            std::vector<CVector> args(static_cast<std::size_t>(k));
            // Enumerate sorted keys in lexicographic order.
            while (true) {
                for (std::size_t j = 0; j < key.size(); ++j) {
                    args[j] = cols[static_cast<std::size_t>(key[j])];
                }
                q.set_coeff(key, uh.apply(p.multilinear_eval(args)));
                int pos = k - 1;
                while (pos >= 0 && key[static_cast<std::size_t>(pos)] == static_cast<int>(n) - 1) {
                    --pos;
                }
                if (pos < 0) {
                    break;
                }
                const int v = key[static_cast<std::size_t>(pos)] + 1;
                for (auto j = static_cast<std::size_t>(pos); j < key.size(); ++j) {
                    key[j] = v;
                }
            }
        }
        g.set_poly(std::move(q));
    }
    return g;
}

} // namespace fsjet
