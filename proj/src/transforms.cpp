#include <fsjet/sampling.hpp>
#include <fsjet/transforms.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fsjet
{

namespace
{

// Solves A x = b in place by Gaussian elimination with partial pivoting.
// Returns false for a numerically singular matrix.
bool solve_dense(std::vector<cplx> a, CVector &b)
{
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) {
                piv = r;
            }
        }
        if (std::abs(a[piv * n + c]) < 1e-300) {
            return false;
        }
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[c * n + j], a[piv * n + j]);
            }
            std::swap(b[c], b[piv]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const cplx f = a[r * n + c] / a[c * n + c];
            for (std::size_t j = c; j < n; ++j) {
                a[r * n + j] -= f * a[c * n + j];
            }
            b[r] -= f * b[c];
        }
    }
    for (std::size_t c = n; c-- > 0;) {
        cplx s = b[c];
        for (std::size_t j = c + 1; j < n; ++j) {
            s -= a[c * n + j] * b[j];
        }
        b[c] = s / a[c * n + c];
    }
    return true;
}

std::vector<CVector> probe_directions(int n)
{
    std::vector<CVector> dirs;
    for (int i = 0; i < n; ++i) {
        const CVector ei = basis_vector(static_cast<std::size_t>(n), static_cast<std::size_t>(i));
        dirs.push_back(ei);
        dirs.push_back(cplx(0.0, 1.0) * ei);
    }
    Rng rng(0x0d1a);
    for (int i = 0; i < 16; ++i) {
        dirs.push_back(random_unit_vector(rng, n));
    }
    return dirs;
}

} // namespace

OneDimJet::OneDimJet(int dim, int order) : dim_(dim), order_(order)
{
    if (dim < 1 || order < 1 || order > kMaxOrder) {
        throw std::invalid_argument("OneDimJet: invalid dimension or order");
    }
    for (int k = 1; k < order; ++k) {
        polys_.emplace_back(k, dim, 1);
    }
}

OneDimJet::OneDimJet(int dim, int order, std::vector<HomPoly> factor_polys) : OneDimJet(dim, order)
{
    if (factor_polys.size() > polys_.size()) {
        throw std::invalid_argument("OneDimJet: more factor polynomials than the order allows");
    }
    for (auto &p : factor_polys) {
        const int k = p.degree();
        if (k < 1 || k >= order || p.domain_dim() != dim || p.codomain_dim() != 1) {
            throw std::invalid_argument("OneDimJet: factor polynomial of wrong shape");
        }
        polys_[static_cast<std::size_t>(k - 1)] = std::move(p);
    }
}

const HomPoly &OneDimJet::factor_poly(int k) const
{
    if (k < 1 || k >= order_) {
        throw std::out_of_range("OneDimJet::factor_poly: degree " + std::to_string(k) + " outside [1, order)");
    }
    return polys_[static_cast<std::size_t>(k - 1)];
}

cplx OneDimJet::factor(const CVector &x) const
{
    cplx s = 1.0;
    for (const auto &p : polys_) {
        if (!p.is_zero()) {
            s += p.eval(x)[0];
        }
    }
    return s;
}

MappingJet OneDimJet::to_mapping() const
{
    MappingJet f(dim_, order_);
    for (const auto &p : polys_) {
        if (p.is_zero()) {
            continue;
        }
        const int deg = p.degree() + 1;
        const Series ps = p.to_series(deg)[0];
        VecSeries out;
        for (int i = 0; i < dim_; ++i) {
            out.push_back(ps * Series::variable(dim_, deg, i));
        }
        f.set_poly(HomPoly::from_series(out, deg));
    }
    return f;
}

std::optional<OneDimJet> detect_onedim(const MappingJet &f, double tol)
{
    const int n = f.dim();
    const auto dirs = probe_directions(n);
    const double thresh = tol * (1.0 + f.max_coeff_abs());
    std::vector<HomPoly> factors;
    for (int k = 2; k <= f.order(); ++k) {
        const VecSeries ps = f.poly(k).to_series(k);
        // P_k(x)_i = p(x) x_i gives n estimates of each coefficient of p;
        // the least-squares fit is their mean.
        Series acc(n, k - 1);
        for (int i = 0; i < n; ++i) {
            for (const auto &[alpha, c] : ps[static_cast<std::size_t>(i)].terms()) {
                if (alpha[static_cast<std::size_t>(i)] == 0) {
                    continue;
                }
                Exponent beta = alpha;
                beta[static_cast<std::size_t>(i)] -= 1;
                acc.add_term(beta, c / static_cast<double>(n));
            }
        }
        HomPoly p = HomPoly::from_series(VecSeries{acc}, k - 1);
        for (const auto &x : dirs) {
            const CVector fit = p.eval(x)[0] * x;
            if (norm(f.poly(k).eval(x) - fit) > thresh) {
                return std::nullopt;
            }
        }
        factors.push_back(std::move(p));
    }
    return OneDimJet(n, f.order(), std::move(factors));
}

MappingJet root_transform(const OneDimJet &f, int n, const CVector &e, std::optional<int> order)
{
    if (n < 2) {
        throw std::invalid_argument("root_transform: root index must be at least 2");
    }
    if (static_cast<int>(e.size()) != f.dim() || !(std::abs(norm(e) - 1.0) < 1e-12)) {
        throw std::invalid_argument("root_transform: e must be a unit vector of matching dimension");
    }
    const int natural = n * (f.order() - 1) + 1;
    const int out_order = order.value_or(std::min(natural, kMaxOrder));
    if (out_order < 2 * n + 1) {
        throw std::invalid_argument("root_transform: output order " + std::to_string(out_order)
                                    + " below 2n+1 (input order too low or n too large)");
    }
    if (out_order > natural || out_order > kMaxOrder) {
        throw std::invalid_argument("root_transform: output order " + std::to_string(out_order)
                                    + " not determined by the input jet");
    }
    const int dim = f.dim();

    // s(w^n e) as a series in w: a_k = p_k(e).
    std::vector<cplx> a(static_cast<std::size_t>(f.order()));
    a[0] = 1.0;
    for (int k = 1; k < f.order(); ++k) {
        a[static_cast<std::size_t>(k)] = f.factor_poly(k).eval(e)[0];
    }
    const int mmax = (out_order - 1) / n;
    const std::vector<cplx> c = series_power(a, 1.0 / n, mmax + 1);

    CVector conj_e(e.size());
    std::transform(e.begin(), e.end(), conj_e.begin(), [](cplx z) { return std::conj(z); });
    const Series z = Series::linear_form(dim, out_order, conj_e); // <x, e>

    MappingJet g(dim, out_order);
    Series zpow = Series::constant(dim, out_order, 1.0);
    for (int m = 1; m <= mmax; ++m) {
        for (int i = 0; i < n; ++i) {
            zpow = zpow * z;
        }
        const int deg = n * m + 1;
        VecSeries out;
        for (int i = 0; i < dim; ++i) {
            out.push_back(c[static_cast<std::size_t>(m)] * (zpow * Series::variable(dim, out_order, i)));
        }
        g.set_poly(HomPoly::from_series(out, deg));
    }
    return g;
}

MapFn root_transform_map(ScalarFn s, int n, CVector e)
{
    return [s = std::move(s), n, e = std::move(e)](const CVector &x) {
        const cplx z = inner(x, e);
        const cplx w = std::pow(s(std::pow(z, n) * e), 1.0 / n);
        return w * x;
    };
}

Report check_injectivity_sampled(const MapFn &g, int dim, int samples, std::uint64_t seed,
                                 const InjectivityOptions &opts)
{
    Report rep;
    rep.suite = "injectivity";
    rep.trials = samples;
    rep.seed = seed;
    rep.tolerance = 0.0;
    const double h = 1e-6;
    int violations = 0;
    for (int s = 0; s < samples; ++s) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
        const CVector x1 = random_in_ball(rng, dim, opts.radius);
        CVector x2 = random_in_ball(rng, dim, opts.radius);
        const CVector target = g(x1);
        bool converged = false;
        for (int it = 0; it < opts.newton_steps; ++it) {
            CVector res = g(x2) - target;
            if (norm(res) < opts.collision_tol) {
                converged = true;
                break;
            }
            std::vector<cplx> jac(static_cast<std::size_t>(dim * dim));
            for (int j = 0; j < dim; ++j) {
                const CVector ej = h * basis_vector(static_cast<std::size_t>(dim), static_cast<std::size_t>(j));
                const CVector col = (g(x2 + ej) - g(x2 - ej)) / cplx(2.0 * h);
                for (int i = 0; i < dim; ++i) {
                    jac[static_cast<std::size_t>(i * dim + j)] = col[static_cast<std::size_t>(i)];
                }
            }
            CVector step = -res;
            if (!solve_dense(jac, step)) {
                break;
            }
            // Damp steps that would leave the sampling ball.
            double t = 1.0;
            while (t > 1e-4 && norm(x2 + t * step) >= opts.radius) {
                t *= 0.5;
            }
            if (norm(x2 + t * step) >= opts.radius) {
                break;
            }
            x2 += t * step;
        }
        if (converged && norm(x1 - x2) > opts.separation) {
            ++violations;
            rep.record(1.0, "x1=" + to_string(x1) + " x2=" + to_string(x2));
        }
    }
    rep.max_residual = violations;
    rep.details.emplace_back("violations", std::to_string(violations));
    rep.finalize();
    return rep;
}

} // namespace fsjet
