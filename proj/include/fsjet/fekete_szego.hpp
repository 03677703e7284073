#pragma once

#include <fsjet/hom_poly.hpp>
#include <fsjet/jet.hpp>
#include <fsjet/linalg.hpp>

#include <cstdint>

namespace fsjet
{

// Direction e on the unit sphere and the two parameters. In C^n the support
// functional at e is x -> <x, e>.
struct FSContext {
    CVector e;
    cplx lambda;
    cplx mu;

    // Validates | ||e|| - 1 | < 1e-12.
    static FSContext make(CVector e, cplx lambda, cplx mu);
};

struct FSValue {
    CVector vector;
    cplx scalar_projection; // <vector, e>
};

// Psi_e(f, lambda, mu) = P_3(e) - (mu/2) D^2 f(0)[e, P_2(e)] - (lambda - mu) <P_2(e), e> P_2(e).
FSValue fs_mapping(const MappingJet &f, const FSContext &ctx);

// mu for the scalar variants psi^(1..4): 0, 1, 2/3, 2.
cplx scalar_variant_mu(int variant);
// <Psi_e(f, lambda, mu_v), e>
cplx fs_scalar(const MappingJet &f, const CVector &e, cplx lambda, int variant);

// psi^A_e(f, lambda) = a_3^A - (lambda - 1) (a_2^A)^2 - a~_2^{2,A}
cplx fs_operator_variant(const MappingJet &f, const CVector &e, const LinOp &a, cplx lambda);

struct NormOptions {
    int starts = 32;
    int steps = 200;
    std::uint64_t seed = 0x5eed;
};

struct BilinearNorm {
    double value = 0.0;
    CVector u;
    CVector v;
};

// sup_{||u|| = ||v|| = 1} ||B[u, v]||, by multistart alternating ascent on the
// product of spheres. A lower estimate of the true norm, deterministic in seed.
BilinearNorm operator_norm_bilinear(const HomPoly &b, const NormOptions &opts = {});

// l(lambda, mu) = 2 |lambda - mu| + |mu| + |mu - 2|
double composition_error_factor(cplx lambda, cplx mu);

struct ErrorTerm {
    CVector residual; // Psi_e(f o g) - Psi_e(f) - Psi_e(g)
    double bound = 0.0;
    double norm_f = 0.0;
    double norm_g = 0.0;
};

ErrorTerm fs_error_term(const MappingJet &f, const MappingJet &g, const FSContext &ctx, const NormOptions &opts = {});

} // namespace fsjet
