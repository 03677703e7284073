#include <fsjet/estimates.hpp>
#include <fsjet/fekete_szego.hpp>
#include <fsjet/sampling.hpp>
#include <fsjet/semigroup.hpp>
#include <fsjet/transforms.hpp>
#include <fsjet/verify.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace fsjet
{

namespace
{

struct Trial {
    Rng rng;
    int index;
    int dim;
};

using TrialFn = std::function<void(Trial &, Report &)>;

CVector psi(const MappingJet &f, const CVector &e, cplx l, cplx m)
{
    return fs_mapping(f, FSContext{e, l, m}).vector;
}

CVector bil(const HomPoly &b, const CVector &u, const CVector &v)
{
    const CVector args[2] = {u, v};
    return b.multilinear_eval(args);
}

// Scale for identities cubic in the coefficients of the inputs.
double scale(double coef)
{
    return (1.0 + coef) * (1.0 + coef) * (1.0 + coef);
}

double jet_diff(const MappingJet &a, const MappingJet &b)
{
    double d = 0.0;
    for (int k = 2; k <= std::min(a.order(), b.order()); ++k) {
        d = std::max(d, (a.poly(k) - b.poly(k)).max_coeff_abs());
    }
    return d;
}

std::string tag(const Trial &t)
{
    return "trial=" + std::to_string(t.index) + " dim=" + std::to_string(t.dim);
}

void polarization_trial(Trial &t, Report &r)
{
    const HomPoly p = random_hom_poly(t.rng, 2, t.dim, t.dim);
    const CVector x1 = random_in_ball(t.rng, t.dim, 2.0);
    const CVector x2 = random_in_ball(t.rng, t.dim, 2.0);
    const double s = 1.0 + norm(x1) * norm(x1) + norm(x2) * norm(x2);
    r.record(polarization_check(p, x1, x2) / s, tag(t));
}

void compose_trial(Trial &t, Report &r)
{
    const MappingJet f = random_jet(t.rng, t.dim, 3);
    const MappingJet g = random_jet(t.rng, t.dim, 3);
    const CVector e = random_unit_vector(t.rng, t.dim);
    const cplx l = random_complex(t.rng, 2.0);
    const cplx m = random_complex(t.rng, 2.0);
    const MappingJet fg = compose(f, g);
    const CVector p2 = f.poly(2).eval(e);
    const CVector q2 = g.poly(2).eval(e);
    const CVector rhs = psi(f, e, l, m) + psi(g, e, l, m) - (l - m) * (inner(p2, e) * q2 + inner(q2, e) * p2) -
                        m * bil(g.poly(2), e, p2) - (m - 2.0) * bil(f.poly(2), e, q2);
    const double s = scale(std::max(f.max_coeff_abs(), g.max_coeff_abs()));
    double res = max_abs(psi(fg, e, l, m) - rhs);
    res = std::max(res, (fg.poly(2) - compose_degree2(f, g)).max_coeff_abs());
    res = std::max(res, (fg.poly(3) - compose_degree3(f, g)).max_coeff_abs());
    r.record(res / s, tag(t));
}

void inverse_trial(Trial &t, Report &r)
{
    const MappingJet f = random_jet(t.rng, t.dim, 3);
    const MappingJet fi = invert(f);
    const CVector e = random_unit_vector(t.rng, t.dim);
    const cplx l = random_complex(t.rng, 2.0);
    const cplx m = random_complex(t.rng, 2.0);
    double res = max_abs(psi(fi, e, l, m) + psi(f, e, 2.0 - l, 2.0 - m));
    res = std::max(res, max_abs(fi.poly(3).eval(e) + psi(f, e, 2.0, 2.0)));
    res = std::max(res, jet_diff(compose(f, fi), MappingJet::identity(t.dim)));
    r.record(res / scale(f.max_coeff_abs()), tag(t));
}

void iterate_trial(Trial &t, Report &r)
{
    const MappingJet f = random_jet(t.rng, t.dim, 3, 0.5);
    const CVector e = random_unit_vector(t.rng, t.dim);
    const cplx l = random_complex(t.rng, 2.0);
    const cplx m = random_complex(t.rng, 2.0);
    for (int k = -3; k <= 3; ++k) {
        if (k == 0) {
            continue;
        }
        const double kd = k;
        const CVector rhs = kd * psi(f, e, kd * l - kd + 1.0, kd * m - kd + 1.0);
        const double res = max_abs(psi(iterate(f, k), e, l, m) - rhs) / (1.0 + max_abs(rhs));
        r.record(res, tag(t) + " m=" + std::to_string(k));
    }
}

void unitary_trial(Trial &t, Report &r)
{
    const MappingJet f = random_jet(t.rng, t.dim, 3);
    const LinOp u = random_unitary(t.rng, t.dim);
    const CVector e = random_unit_vector(t.rng, t.dim);
    const cplx l = random_complex(t.rng, 2.0);
    const cplx m = random_complex(t.rng, 2.0);
    const CVector lhs = psi(unitary_conjugate(f, u), e, l, m);
    const CVector rhs = u.adjoint().apply(psi(f, u.apply(e), l, m));
    r.record(max_abs(lhs - rhs) / scale(f.max_coeff_abs()), tag(t));
}

void root_trial(Trial &t, Report &r)
{
    const int n = 2 + t.index % 2;
    const OneDimJet s = random_onedim_jet(t.rng, t.dim, 3);
    const MappingJet f = s.to_mapping();
    const CVector e = random_unit_vector(t.rng, t.dim);
    const MappingJet g = root_transform(s, n, e);
    double res = max_abs(g.poly(n + 1).eval(e) - (1.0 / n) * f.poly(2).eval(e));
    for (int j = 0; j < 5; ++j) {
        const cplx mu = random_complex(t.rng, 3.0);
        const CVector target = (1.0 / n) * psi(f, e, (n - 1.0) / (2.0 * n), mu);
        res = std::max(res, max_abs(g.poly(2 * n + 1).eval(e) - target));
    }
    for (int k = 2; k <= g.order(); ++k) {
        if ((k - 1) % n != 0) {
            res = std::max(res, g.poly(k).max_coeff_abs());
        }
    }
    r.record(res / scale(f.max_coeff_abs()), tag(t) + " n=" + std::to_string(n));
}

void error_bound_trial(Trial &t, Report &r)
{
    const FSContext ctx{random_unit_vector(t.rng, t.dim), random_complex(t.rng, 2.0), random_complex(t.rng, 2.0)};
    if (t.index % 2 == 0) {
        const MappingJet f = random_jet(t.rng, t.dim, 3);
        const MappingJet g = random_jet(t.rng, t.dim, 3);
        const ErrorTerm e = fs_error_term(f, g, ctx);
        r.record(std::max(0.0, norm(e.residual) - e.bound), tag(t));
    } else {
        // one-dimensional pair: equality with 2 |1 - lambda| |p2(e) q2(e)|
        const MappingJet f = random_onedim_jet(t.rng, t.dim, 3).to_mapping();
        const MappingJet g = random_onedim_jet(t.rng, t.dim, 3).to_mapping();
        const ErrorTerm e = fs_error_term(f, g, ctx);
        const cplx p2 = inner(f.poly(2).eval(ctx.e), ctx.e);
        const cplx q2 = inner(g.poly(2).eval(ctx.e), ctx.e);
        const double exact = 2.0 * std::abs(1.0 - ctx.lambda) * std::abs(p2 * q2);
        r.record(std::max(std::abs(norm(e.residual) - exact), std::max(0.0, norm(e.residual) - e.bound)),
                 tag(t) + " onedim");
    }
}

void semigroup_trial(Trial &t, Report &r)
{
    static constexpr double kTimes[3] = {0.1, 0.7, 2.0};
    const double time = kTimes[t.index % 3];
    const MappingJet h = random_generator(t.rng, t.dim);
    const CVector e = random_unit_vector(t.rng, t.dim);
    const FlowJet u = semigroup_jet(h, time);
    const FlowParts p = flow_parts_from_ode(h, time, e);
    const double res = std::max(max_abs(p.degree2 - u.scale() * u.bracket.poly(2).eval(e)),
                                max_abs(p.degree3 - u.scale() * u.bracket.poly(3).eval(e)));
    r.record(res, tag(t) + " t=" + format_double(time));
}

void duality_trial(Trial &t, Report &r)
{
    const MappingJet h = random_generator(t.rng, t.dim, t.index % 2 == 1);
    const MappingJet f = starlike_from_generator(h);
    const CVector e = random_unit_vector(t.rng, t.dim);
    const cplx l = random_complex(t.rng, 2.0);
    const cplx m = random_complex(t.rng, 2.0);
    double res = max_abs(psi(h, e, 2.0 * l, 2.0 * m) + 2.0 * psi(f, e, 1.0 - l, 1.0 - m));
    res = std::max(res, jet_diff(generator_from_starlike(f), h));
    r.record(res / scale(h.max_coeff_abs()), tag(t));
}

void bounds_trial(Trial &t, Report &r)
{
    const cplx l = random_complex(t.rng, 3.0);
    const std::uint64_t s = t.rng();
    switch (t.index % 3) {
    case 0: {
        const MappingJet h = random_generator(t.rng, t.dim);
        if (!is_generator(h, 2000, s).pass) {
            return; // bound only claimed on generators
        }
        const BoundReport b = check_generator_scalar_bound(h, l, 64, s);
        r.record(std::max(0.0, -b.margin), tag(t) + " generator-scalar");
        break;
    }
    case 1: {
        const MappingJet h = random_generator(t.rng, t.dim, true);
        if (!is_generator(h, 2000, s).pass) {
            return;
        }
        const MappingJet f = starlike_from_generator(h);
        const BoundReport b = check_starlike_bound(f, l, random_complex(t.rng, 2.0), SupOptions{8, 100, s});
        r.record(std::max(0.0, -b.margin), tag(t) + " starlike");
        break;
    }
    default: {
        // Random bounded one-dimensional mapping with 1 < M <= 3; its own
        // allowance of 1e-6 for the sampled M is subtracted.
        for (double sc = 0.6;; sc *= 0.8) {
            const OneDimJet sj = random_onedim_jet(t.rng, t.dim, 3, sc);
            const OneDimClosedForm f{sj, [sj](const CVector &x) { return sj.factor(x); }};
            if (sj.to_mapping().is_identity() || estimate_sup_norm_onedim(f, BoundedOptions{2000, 0.999, 0, s}) > 3.0) {
                continue;
            }
            const BoundReport b =
                check_bounded_onedim_bound(f, l, random_complex(t.rng, 2.0), BoundedOptions{10000, 0.999, 16, s});
            r.record(std::max(0.0, -b.margin - b.tolerance), tag(t) + " bounded M=" + format_double(b.m_sup));
            break;
        }
    }
    }
}

struct SuiteDef {
    double tolerance;
    TrialFn fn;
    const char *residual;
};

const std::map<std::string, SuiteDef> &suites()
{
    static const std::map<std::string, SuiteDef> s{
        {"polarization", {1e-12, polarization_trial, "polarization residual / (1 + |x1|^2 + |x2|^2)"}},
        {"compose", {1e-11, compose_trial, "composition identity and R2, R3 closed forms, / (1 + c)^3"}},
        {"inverse", {1e-11, inverse_trial, "inverse duality, degree-3 part and round trip, / (1 + c)^3"}},
        {"iterate", {1e-10, iterate_trial, "iterate scaling for m in -3..3, relative"}},
        {"unitary", {1e-11, unitary_trial, "unitary transform, / (1 + c)^3"}},
        {"root", {1e-10, root_trial, "root transform parts and sparsity, / (1 + c)^3"}},
        {"error-bound", {1e-9, error_bound_trial, "bound excess, and one-dimensional equality defect"}},
        {"semigroup", {1e-6, semigroup_trial, "closed-form flow jet versus ODE extraction"}},
        {"duality", {1e-11, duality_trial, "generator-starlike duality and round trip, / (1 + c)^3"}},
        {"bounds", {1e-9, bounds_trial, "negative margin beyond each bound's allowance"}},
    };
    return s;
}

} // namespace

const std::vector<std::string> &suite_names()
{
    static const std::vector<std::string> names{"polarization", "compose",   "inverse", "iterate",
                                                "unitary",      "root",      "error-bound",
                                                "semigroup",    "duality",   "bounds"};
    return names;
}

double default_tolerance(const std::string &suite)
{
    if (suite == "all") {
        return 1.0;
    }
    const auto it = suites().find(suite);
    if (it == suites().end()) {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    return it->second.tolerance;
}

Report run_suite(const std::string &suite, const VerifyOptions &opts)
{
    if (opts.trials < 0) {
        throw std::invalid_argument("trials must be nonnegative");
    }
    if (opts.dims.empty()) {
        throw std::invalid_argument("dims must not be empty");
    }
    for (int d : opts.dims) {
        if (d < 1 || d > 4) {
            throw std::invalid_argument("dims must lie in 1..4");
        }
    }
    if (suite == "all") {
        return run_all(opts).summary;
    }
    const auto it = suites().find(suite);
    if (it == suites().end()) {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    Report r;
    r.suite = suite;
    r.trials = opts.trials;
    r.seed = opts.seed;
    r.tolerance = opts.tolerance.value_or(it->second.tolerance);
    for (int i = 0; i < opts.trials; ++i) {
        const int dim = opts.dims[static_cast<std::size_t>(i) % opts.dims.size()];
        Trial t{Rng(derive_seed(opts.seed, static_cast<std::uint64_t>(i))), i, dim};
        it->second.fn(t, r);
    }
    r.details.emplace_back("residual", it->second.residual);
    std::string dims;
    for (int d : opts.dims) {
        dims += (dims.empty() ? "" : ",") + std::to_string(d);
    }
    r.details.emplace_back("dims", dims);
    r.finalize();
    return r;
}

SuiteRun run_all(const VerifyOptions &opts)
{
    SuiteRun run;
    run.summary.suite = "all";
    run.summary.trials = opts.trials;
    run.summary.seed = opts.seed;
    run.summary.tolerance = 1.0;
    for (const auto &name : suite_names()) {
        Report r = run_suite(name, opts);
        const double ratio = r.tolerance > 0.0 ? r.max_residual / r.tolerance : (r.max_residual > 0.0 ? INFINITY : 0.0);
        run.summary.record(ratio, name);
        run.summary.details.emplace_back(name, r.pass ? "pass" : "fail");
        run.suites.push_back(std::move(r));
    }
    run.summary.details.emplace_back("residual", "max over suites of max_residual / tolerance");
    run.summary.finalize();
    return run;
}

} // namespace fsjet
