#include <fsjet/fekete_szego.hpp>
#include <fsjet/sampling.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace fsjet
{

namespace
{

CVector bilinear(const HomPoly &b, const CVector &u, const CVector &v)
{
    const CVector args[2] = {u, v};
    return b.multilinear_eval(args);
}

CVector trilinear(const HomPoly &t, const CVector &u, const CVector &v, const CVector &w)
{
    const CVector args[3] = {u, v, w};
    return t.multilinear_eval(args);
}

void check_dim(const MappingJet &f, const CVector &e)
{
    if (static_cast<int>(e.size()) != f.dim()) {
        throw std::invalid_argument("direction of dimension " + std::to_string(e.size()) + " for a jet on C^"
                                    + std::to_string(f.dim()));
    }
}

HomPoly part_or_zero(const MappingJet &f, int k)
{
    return k <= f.order() ? f.poly(k) : HomPoly(k, f.dim(), f.dim());
}

} // namespace

FSContext FSContext::make(CVector e, cplx lambda, cplx mu)
{
    if (!(std::abs(norm(e) - 1.0) < 1e-12)) {
        throw std::invalid_argument("FSContext: direction must have unit norm");
    }
    return FSContext{std::move(e), lambda, mu};
}

FSValue fs_mapping(const MappingJet &f, const FSContext &ctx)
{
    check_dim(f, ctx.e);
    const HomPoly b = part_or_zero(f, 2);
    const HomPoly p3 = part_or_zero(f, 3);
    const CVector &e = ctx.e;

    const CVector p2e = b.eval(e);
    // (mu/2) D^2 f(0)[e, P_2(e)] = mu B[e, P_2(e)]
    CVector psi = p3.eval(e) - ctx.mu * bilinear(b, e, p2e) - (ctx.lambda - ctx.mu) * inner(p2e, e) * p2e;
    const cplx proj = inner(psi, e);
    return FSValue{std::move(psi), proj};
}

cplx scalar_variant_mu(int variant)
{
    switch (variant) {
        case 1:
            return 0.0;
        case 2:
            return 1.0;
        case 3:
            return 2.0 / 3.0;
        case 4:
            return 2.0;
        default:
            throw std::invalid_argument("unknown scalar variant " + std::to_string(variant) + " (expected 1..4)");
    }
}

cplx fs_scalar(const MappingJet &f, const CVector &e, cplx lambda, int variant)
{
    const cplx mu = scalar_variant_mu(variant);
    return fs_mapping(f, FSContext{e, lambda, mu}).scalar_projection;
}

cplx fs_operator_variant(const MappingJet &f, const CVector &e, const LinOp &a, cplx lambda)
{
    check_dim(f, e);
    if (static_cast<int>(a.dim()) != f.dim()) {
        throw std::invalid_argument("fs_operator_variant: operator dimension mismatch");
    }
    const HomPoly b = part_or_zero(f, 2);
    const HomPoly t = part_or_zero(f, 3);
    const CVector ae = a.apply(e);
    const CVector p2e = b.eval(e);

    // D^2 f(0) = 2B, D^3 f(0) = 6T
    const cplx a2 = inner(2.0 * bilinear(b, e, ae) - a.apply(p2e), e);
    const cplx a3 = 0.25 * inner(6.0 * trilinear(t, e, e, ae) - 2.0 * a.apply(t.eval(e)), e);
    const CVector dae = 2.0 * bilinear(b, e, ae);
    const cplx a22 = 0.5 * inner(2.0 * bilinear(b, e, dae) - 2.0 * bilinear(b, e, a.apply(p2e)), e);
    return a3 - (lambda - 1.0) * a2 * a2 - a22;
}

BilinearNorm operator_norm_bilinear(const HomPoly &b, const NormOptions &opts)
{
    if (b.degree() != 2) {
        throw std::invalid_argument("operator_norm_bilinear: degree must be 2");
    }
    const auto n = static_cast<std::size_t>(b.domain_dim());
    BilinearNorm best{0.0, basis_vector(n, 0), basis_vector(n, 0)};
    if (b.is_zero()) {
        return best;
    }
    // Matrix of u -> B[u, v] has columns B[e_i, v].
    auto columns = [&](const CVector &v) {
        std::vector<CVector> cols;
        for (std::size_t i = 0; i < n; ++i) {
            cols.push_back(bilinear(b, basis_vector(n, i), v));
        }
        return cols;
    };
    // One power step toward the top right singular vector of M.
    auto ascend = [&](const std::vector<CVector> &cols, const CVector &u) {
        CVector mu(cols.front().size());
        for (std::size_t i = 0; i < n; ++i) {
            mu += u[i] * cols[i];
        }
        CVector g(n);
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = inner(mu, cols[i]);
        }
        // g = M^* M u
        const double gn = norm(g);
        return gn > 0.0 ? g / gn : u;
    };

    for (int s = 0; s < opts.starts; ++s) {
        Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(s)));
        CVector u = random_unit_vector(rng, static_cast<int>(n));
        CVector v = random_unit_vector(rng, static_cast<int>(n));
        for (int it = 0; it < opts.steps; ++it) {
            u = ascend(columns(v), u);
            v = ascend(columns(u), v);
        }
        const double val = norm(bilinear(b, u, v));
        if (val > best.value) {
            best = BilinearNorm{val, u, v};
        }
    }
    return best;
}

double composition_error_factor(cplx lambda, cplx mu)
{
    return 2.0 * std::abs(lambda - mu) + std::abs(mu) + std::abs(mu - 2.0);
}

ErrorTerm fs_error_term(const MappingJet &f, const MappingJet &g, const FSContext &ctx, const NormOptions &opts)
{
    if (f.dim() != g.dim()) {
        throw std::invalid_argument("fs_error_term: jet dimension mismatch");
    }
    check_dim(f, ctx.e);
    const MappingJet fg = compose(f, g);
    ErrorTerm r;
    r.residual = fs_mapping(fg, ctx).vector - fs_mapping(f, ctx).vector - fs_mapping(g, ctx).vector;
    r.norm_f = operator_norm_bilinear(part_or_zero(f, 2), opts).value;
    r.norm_g = operator_norm_bilinear(part_or_zero(g, 2), opts).value;
    r.bound = composition_error_factor(ctx.lambda, ctx.mu) * r.norm_f * r.norm_g;
    return r;
}

} // namespace fsjet
