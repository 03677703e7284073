#include <fsjet/estimates.hpp>
#include <fsjet/report.hpp>
#include <fsjet/sampling.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsjet
{

namespace
{

CVector bil(const HomPoly &b, const CVector &u, const CVector &v)
{
    const CVector args[2] = {u, v};
    return b.multilinear_eval(args);
}

double norm_sq_psi(const MappingJet &f, const CVector &e, cplx lambda, cplx mu)
{
    const double v = norm(fs_mapping(f, FSContext{e, lambda, mu}).vector);
    return v * v;
}

CVector normalized(const CVector &v)
{
    return v / norm(v);
}

} // namespace

CVector fs_norm_sq_gradient(const MappingJet &f, const CVector &e, cplx lambda, cplx mu)
{
    const auto n = e.size();
    const HomPoly b = f.order() >= 2 ? f.poly(2) : HomPoly(2, f.dim(), f.dim());
    const HomPoly t = f.order() >= 3 ? f.poly(3) : HomPoly(3, f.dim(), f.dim());
    const CVector psi = fs_mapping(f, FSContext{e, lambda, mu}).vector;
    const CVector p2 = b.eval(e);
    const cplx a = inner(p2, e);

    // Psi = P_3(e) - mu B[e, P_2(e)] - (lambda - mu) <P_2(e), e> P_2(e)
    //     has holomorphic Jacobian J and antiholomorphic part K = -(lambda - mu) P_2 P_2^T.
    CVector g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const CVector ej = basis_vector(n, j);
        const CVector bej = bil(b, e, ej);
        const CVector dp2 = 2.0 * bej;
        const CVector targs[3] = {e, e, ej};
        const CVector dp3 = 3.0 * t.multilinear_eval(targs);
        const CVector db = bil(b, ej, p2) + 2.0 * bil(b, e, bej);
        const CVector col = dp3 - mu * db - (lambda - mu) * (inner(dp2, e) * p2 + a * dp2);
        g[j] = 2.0 * (inner(psi, col) - (lambda - mu) * p2[j] * inner(p2, psi));
    }
    return g;
}

CVector sphere_tangent(const CVector &e, const CVector &g)
{
    return g - inner(g, e).real() * e;
}

SupResult sup_norm_fs(const MappingJet &f, cplx lambda, cplx mu, const SupOptions &opts)
{
    SupResult best{0.0, basis_vector(static_cast<std::size_t>(f.dim()), 0)};
    if (opts.starts <= 0) {
        return best;
    }
    best.value = -1.0;
    for (int s = 0; s < opts.starts; ++s) {
        Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(s)));
        CVector e = random_unit_vector(rng, f.dim());
        double val = norm_sq_psi(f, e, lambda, mu);
        double step = 0.1;
        for (int it = 0; it < opts.steps && step > 1e-14; ++it) {
            const CVector d = sphere_tangent(e, fs_norm_sq_gradient(f, e, lambda, mu));
            const double dn = norm(d);
            if (dn < 1e-15) {
                break;
            }
            // Backtracking on the retraction e -> (e + s d / |d|) / |.|.
            bool moved = false;
            while (step > 1e-14) {
                const CVector cand = normalized(e + (step / dn) * d);
                const double cv = norm_sq_psi(f, cand, lambda, mu);
                if (cv > val) {
                    e = cand;
                    val = cv;
                    step = std::min(1.0, step * 1.5);
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) {
                break;
            }
        }
        if (std::sqrt(val) > best.value) {
            best = SupResult{std::sqrt(val), e};
        }
    }
    return best;
}

double estimate_sup_norm_onedim(const OneDimClosedForm &f, const BoundedOptions &opts)
{
    const int n = f.series.dim();
    auto value = [&](const CVector &x) { return std::abs(f.factor(x)) * norm(x); };
    Rng rng(opts.seed);
    std::vector<std::pair<double, CVector>> top;
    for (int i = 0; i < opts.samples; ++i) {
        CVector x = opts.radius * random_unit_vector(rng, n);
        top.emplace_back(value(x), std::move(x));
    }
    std::ranges::sort(top, [](const auto &a, const auto &b) { return a.first > b.first; });
    top.resize(std::min<std::size_t>(top.size(), 8));
    double best = top.empty() ? 0.0 : top.front().first;
    for (auto &[v, x] : top) {
        double sigma = 0.05;
        while (sigma > 1e-9) {
            bool improved = false;
            for (int k = 0; k < 8; ++k) {
                const CVector cand = opts.radius * normalized(x + sigma * random_unit_vector(rng, n));
                const double cv = value(cand);
                if (cv > v) {
                    v = cv;
                    x = cand;
                    improved = true;
                }
            }
            if (!improved) {
                sigma *= 0.5;
            }
        }
        best = std::max(best, v);
    }
    return best;
}

double bounded_onedim_bound(double m, cplx lambda)
{
    const double q = m * m - 1.0;
    return (q / m) * std::max(1.0, std::abs((q * lambda + 1.0) / m));
}

BoundReport check_bounded_onedim_bound(const OneDimClosedForm &f, cplx lambda, cplx mu, const BoundedOptions &opts)
{
    const double m = estimate_sup_norm_onedim(f, opts);
    const MappingJet jet = f.series.to_mapping();
    BoundReport r;
    if (!(m > 1.0)) {
        // s = 1 is the limit case M = 1: Psi = 0 and the bound is 0.
        if (!jet.is_identity()) {
            throw std::invalid_argument("check_bounded_onedim_bound: sampled M <= 1, hypothesis M > 1 fails");
        }
        r.bound_name = "bounded-onedim";
        r.lambda = lambda;
        r.mu = mu;
        r.m_sup = 1.0;
        r.tolerance = 1e-6;
        r.pass = true;
        r.witness = basis_vector(static_cast<std::size_t>(jet.dim()), 0);
        r.seed = opts.seed;
        r.note = "identity mapping, limit case M = 1";
        return r;
    }
    r.bound_name = "bounded-onedim";
    r.lambda = lambda;
    r.mu = mu;
    r.m_sup = m;
    r.bound = bounded_onedim_bound(m, lambda);
    r.tolerance = 1e-6;
    r.trials = opts.directions;
    r.seed = opts.seed;
    r.note = "M estimated from " + std::to_string(opts.samples) + " samples at radius " + format_double(opts.radius);

    const SupResult sup = sup_norm_fs(jet, lambda, mu, SupOptions{8, 100, derive_seed(opts.seed, 1)});
    r.estimate = sup.value;
    r.witness = sup.witness;
    Rng rng(derive_seed(opts.seed, 2));
    for (int i = 0; i < opts.directions; ++i) {
        const CVector e = random_unit_vector(rng, jet.dim());
        const double v = norm(fs_mapping(jet, FSContext{e, lambda, mu}).vector);
        if (v > r.estimate) {
            r.estimate = v;
            r.witness = e;
        }
    }
    r.margin = r.bound - r.estimate;
    r.pass = r.margin >= -r.tolerance;
    return r;
}

BoundReport check_generator_scalar_bound(const MappingJet &h, cplx lambda, int directions, std::uint64_t seed)
{
    BoundReport r;
    r.bound_name = "generator-scalar";
    r.lambda = lambda;
    r.mu = 0.0;
    r.bound = 2.0 * std::max(1.0, std::abs(2.0 * lambda - 1.0));
    r.trials = directions;
    r.seed = seed;
    r.witness = basis_vector(static_cast<std::size_t>(h.dim()), 0);
    Rng rng(seed);
    for (int i = 0; i < directions; ++i) {
        const CVector e = random_unit_vector(rng, h.dim());
        const double v = std::abs(fs_mapping(h, FSContext{e, lambda, 0.0}).scalar_projection);
        if (v > r.estimate) {
            r.estimate = v;
            r.witness = e;
        }
    }
    r.margin = r.bound - r.estimate;
    r.pass = r.margin >= -r.tolerance;
    return r;
}

BoundReport check_starlike_bound(const MappingJet &f, cplx lambda, cplx mu, const SupOptions &opts)
{
    BoundReport r;
    r.bound_name = "starlike-onedim";
    r.lambda = lambda;
    r.mu = mu;
    r.bound = std::max(1.0, std::abs(4.0 * lambda - 3.0));
    r.trials = opts.starts;
    r.seed = opts.seed;
    const SupResult s = sup_norm_fs(f, lambda, mu, opts);
    r.estimate = s.value;
    r.witness = s.witness;
    r.margin = r.bound - r.estimate;
    r.pass = r.margin >= -r.tolerance;
    return r;
}

} // namespace fsjet
