#include <fsjet/sampling.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fsjet
{

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform(Rng &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

cplx random_complex(Rng &rng, double radius)
{
    const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
    const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    return std::polar(r, t);
}

CVector random_unit_vector(Rng &rng, int n)
{
    std::normal_distribution<double> g;
    CVector v(static_cast<std::size_t>(n));
    double nv = 0.0;
    while (nv < 1e-8) {
        for (auto &x : v) {
            x = cplx(g(rng), g(rng));
        }
        nv = norm(v);
    }
    return v / nv;
}

CVector random_in_ball(Rng &rng, int n, double radius)
{
    CVector v = random_unit_vector(rng, n);
    const double r = radius * std::pow(uniform(rng, 0.0, 1.0), 1.0 / (2.0 * n));
    return r * v;
}

HomPoly random_hom_poly(Rng &rng, int degree, int n, int m, double scale)
{
    HomPoly p(degree, n, m);
    HomPoly::Key key(static_cast<std::size_t>(degree), 0);
    while (true) {
        CVector v(static_cast<std::size_t>(m));
        for (auto &x : v) {
            x = random_complex(rng, scale);
        }
        p.set_coeff(key, v);
        int pos = degree - 1;
        while (pos >= 0 && key[static_cast<std::size_t>(pos)] == n - 1) {
            --pos;
        }
        if (pos < 0) {
            break;
        }
        const int val = key[static_cast<std::size_t>(pos)] + 1;
        for (auto j = static_cast<std::size_t>(pos); j < key.size(); ++j) {
            key[j] = val;
        }
    }
    return p;
}

MappingJet random_jet(Rng &rng, int n, int order, double scale)
{
    MappingJet f(n, order);
    for (int k = 2; k <= order; ++k) {
        f.set_poly(random_hom_poly(rng, k, n, n, scale));
    }
    return f;
}

LinOp random_unitary(Rng &rng, int n)
{
    std::normal_distribution<double> g;
    std::vector<CVector> cols;
    for (int j = 0; j < n; ++j) {
        CVector v(static_cast<std::size_t>(n));
        for (auto &x : v) {
            x = cplx(g(rng), g(rng));
        }
        // Two Gram-Schmidt passes keep the columns orthonormal to roundoff.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &c : cols) {
                v -= inner(v, c) * c;
            }
        }
        cols.push_back(v / norm(v));
    }
    LinOp u(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            u(i, j) = cols[j][i];
        }
    }
    return u;
}

HomPoly random_onedim_part(Rng &rng, int degree, int n, double scale)
{
    const HomPoly p = random_hom_poly(rng, degree - 1, n, 1, scale);
    const auto ps = p.to_series(degree);
    VecSeries out;
    for (int i = 0; i < n; ++i) {
        out.push_back(ps[0] * Series::variable(n, degree, i));
    }
    return HomPoly::from_series(out, degree);
}

OneDimJet random_onedim_jet(Rng &rng, int n, int order, double scale)
{
    std::vector<HomPoly> ps;
    for (int k = 1; k < order; ++k) {
        ps.push_back(random_hom_poly(rng, k, n, 1, scale));
    }
    return OneDimJet(n, order, std::move(ps));
}

double min_linear_quadratic(double a, double b)
{
    double m = std::min(0.0, a + b);
    if (b > 0.0) {
        const double r = -a / (2.0 * b);
        if (r > 0.0 && r < 1.0) {
            m = std::min(m, r * a + r * r * b);
        }
    }
    return m;
}

MappingJet random_generator(Rng &rng, int n, bool onedim, int probes, double safety)
{
    MappingJet h(n, 3);
    if (onedim) {
        h.set_poly(random_onedim_part(rng, 2, n));
        h.set_poly(random_onedim_part(rng, 3, n));
    } else {
        h.set_poly(random_hom_poly(rng, 2, n, n));
        h.set_poly(random_hom_poly(rng, 3, n, n));
    }
    // Along x = r theta: Re<h(x), x> / r^2 = 1 + s (r a + r^2 b).
    double worst = 0.0;
    for (int i = 0; i < probes; ++i) {
        const CVector th = random_unit_vector(rng, n);
        const double a = inner(h.poly(2).eval(th), th).real();
        const double b = inner(h.poly(3).eval(th), th).real();
        worst = std::min(worst, min_linear_quadratic(a, b));
    }
    const double s = worst < 0.0 ? safety / (-worst) : 1.0;
    MappingJet r(n, 3);
    r.set_poly(s * h.poly(2));
    r.set_poly(s * h.poly(3));
    return r;
}

} // namespace fsjet
