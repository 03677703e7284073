#include <fsjet/sampling.hpp>
#include <fsjet/semigroup.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fsjet
{

double FlowJet::scale() const
{
    return std::exp(-t);
}

CVector FlowJet::eval(const CVector &x) const
{
    return scale() * bracket.eval(x);
}

Report is_generator(const MapFn &h, int dim, int samples, std::uint64_t seed, double radius)
{
    Report rep;
    rep.suite = "is_generator";
    rep.trials = samples;
    rep.seed = seed;
    rep.tolerance = 1e-10;
    double min_val = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
        const CVector x = (s % 2 == 0) ? random_in_ball(rng, dim, radius) : radius * random_unit_vector(rng, dim);
        const double v = inner(h(x), x).real();
        if (v < min_val) {
            min_val = v;
        }
        rep.record(-v, "x=" + to_string(x));
    }
    if (samples == 0) {
        min_val = 0.0;
    }
    rep.max_residual = std::max(0.0, -min_val);
    rep.details.emplace_back("min_re_inner", format_double(min_val));
    rep.finalize();
    return rep;
}

Report is_generator(const MappingJet &h, int samples, std::uint64_t seed, double radius)
{
    return is_generator([&h](const CVector &x) { return h.eval(x); }, h.dim(), samples, seed, radius);
}

double semigroup_lambda(double t)
{
    const double c = std::exp(-t);
    return 2.0 * (1.0 - c) / (1.0 + c);
}

FlowJet semigroup_jet(const MappingJet &h, double t)
{
    if (!(t >= 0.0)) {
        throw std::invalid_argument("semigroup_jet: t must be nonnegative");
    }
    if (h.order() < 3) {
        throw std::invalid_argument("semigroup_jet: generator jet must have order >= 3");
    }
    const double c = std::exp(-t);
    const HomPoly &h2 = h.poly(2);
    const HomPoly &h3 = h.poly(3);
    MappingJet bracket(h.dim(), 3);
    bracket.set_poly((c - 1.0) * h2);
    bracket.set_poly(0.5 * (c * c - 1.0) * h3 + (1.0 - c) * (1.0 - c) * contract_last(h2, h2));
    return FlowJet{t, std::move(bracket)};
}

FlowJet compose(const FlowJet &outer, const FlowJet &inner)
{
    // exp(-s) [v + S^s(v)] with v = exp(-t) [x + S^t(x)]:
    // the degree-k part of S^s picks up exp(-t)^(k-1).
    const double c = inner.scale();
    MappingJet scaled(outer.bracket.dim(), outer.bracket.order());
    for (int k = 2; k <= outer.bracket.order(); ++k) {
        scaled.set_poly(std::pow(c, k - 1) * outer.bracket.poly(k));
    }
    return FlowJet{outer.t + inner.t, compose(scaled, inner.bracket)};
}

OdeResult semigroup_ode(const MappingJet &h, double t, const CVector &x0, double step)
{
    if (!(step > 0.0)) {
        throw std::invalid_argument("semigroup_ode: step must be positive");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("semigroup_ode: t must be nonnegative");
    }
    if (!(norm(x0) < 1.0)) {
        throw std::invalid_argument("semigroup_ode: initial point must lie in the open unit ball");
    }
    OdeResult r;
    r.value = x0;
    if (t == 0.0) {
        return r;
    }
    const int steps = static_cast<int>(std::ceil(t / step - 1e-12));
    const double dt = t / steps;
    auto field = [&h](const CVector &u) { return -h.eval(u); };
    CVector u = x0;
    for (int i = 0; i < steps; ++i) {
        const CVector k1 = field(u);
        const CVector k2 = field(u + (0.5 * dt) * k1);
        const CVector k3 = field(u + (0.5 * dt) * k2);
        const CVector k4 = field(u + dt * k3);
        u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!(norm(u) < 1.0)) {
            r.left_ball = true;
        }
    }
    r.value = u;
    r.steps = steps;
    return r;
}

std::vector<CVector> ray_taylor_coefficients(const MapFn &fn, const CVector &v, int max_degree, double radius,
                                             int samples)
{
    if (samples <= max_degree) {
        throw std::invalid_argument("ray_taylor_coefficients: need more samples than the highest degree");
    }
    std::vector<CVector> vals;
    for (int j = 0; j < samples; ++j) {
        const cplx z = std::polar(radius, 2.0 * std::numbers::pi * j / samples);
        vals.push_back(fn(z * v));
    }
    std::vector<CVector> coeffs;
    for (int k = 0; k <= max_degree; ++k) {
        CVector c(vals.front().size());
        for (int j = 0; j < samples; ++j) {
            c += std::polar(1.0, -2.0 * std::numbers::pi * j * k / samples) * vals[static_cast<std::size_t>(j)];
        }
        coeffs.push_back(c / (samples * std::pow(radius, k)));
    }
    return coeffs;
}

FlowParts flow_parts_from_ode(const MappingJet &h, double t, const CVector &e, double step, double radius,
                              int samples)
{
    const auto coeffs = ray_taylor_coefficients(
        [&](const CVector &x) { return semigroup_ode(h, t, x, step).value; }, e, 3, radius, samples);
    return FlowParts{coeffs[2], coeffs[3]};
}

MappingJet starlike_from_generator(const MappingJet &h)
{
    // Degree d of Df(x)[h(x)] - f(x):
    //   H_d + (d - 1) P_d + sum_{k=2}^{d-1} k P_k[x^{k-1}, H_{d-k+1}(x)] = 0.
    MappingJet f(h.dim(), h.order());
    for (int d = 2; d <= h.order(); ++d) {
        HomPoly acc = h.poly(d);
        for (int k = 2; k < d; ++k) {
            acc += static_cast<double>(k) * contract_last(f.poly(k), h.poly(d - k + 1));
        }
        f.set_poly((-1.0 / (d - 1)) * acc);
    }
    return f;
}

MappingJet generator_from_starlike(const MappingJet &f)
{
    MappingJet h(f.dim(), f.order());
    for (int d = 2; d <= f.order(); ++d) {
        HomPoly acc = static_cast<double>(d - 1) * f.poly(d);
        for (int k = 2; k < d; ++k) {
            acc += static_cast<double>(k) * contract_last(f.poly(k), h.poly(d - k + 1));
        }
        h.set_poly(-1.0 * acc);
    }
    return h;
}

} // namespace fsjet
