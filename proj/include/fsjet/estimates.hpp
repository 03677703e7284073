#pragma once

#include <fsjet/fekete_szego.hpp>
#include <fsjet/jet.hpp>
#include <fsjet/transforms.hpp>

#include <cstdint>
#include <string>

namespace fsjet
{

struct SupOptions {
    int starts = 32;
    int steps = 200;
    std::uint64_t seed = 0x50b;
};

struct SupResult {
    double value = 0.0;
    CVector witness;
};

// Realified gradient of F(e) = ||Psi_e(f, lambda, mu)||^2, returned as the
// complex vector g = grad_x F + i grad_y F for e = x + i y, so that
// dF = Re <g, de>.
CVector fs_norm_sq_gradient(const MappingJet &f, const CVector &e, cplx lambda, cplx mu);

// Component of g tangent to the unit sphere at e (real inner product).
CVector sphere_tangent(const CVector &e, const CVector &g);

// sup over unit e of ||Psi_e(f, lambda, mu)||, by multistart projected
// gradient ascent on the real (2n-1)-sphere. Start i depends only on
// (seed, i), so adding starts never lowers the result.
SupResult sup_norm_fs(const MappingJet &f, cplx lambda, cplx mu, const SupOptions &opts = {});

struct BoundReport {
    std::string bound_name;
    cplx lambda;
    cplx mu;
    double m_sup = 0.0; // M where applicable
    double estimate = 0.0;
    double bound = 0.0;
    double margin = 0.0; // bound - estimate
    double tolerance = 1e-9;
    bool pass = false;
    CVector witness;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string note;
};

// One-dimensional-type mapping with an evaluable factor s (f(x) = s(x) x) and
// its series jet.
struct OneDimClosedForm {
    OneDimJet series;
    ScalarFn factor;
};

struct BoundedOptions {
    int samples = 10000;
    double radius = 0.999;
    int directions = 64;
    std::uint64_t seed = 0xb0d;
};

// Estimate of M = sup ||f(x)|| from samples on the sphere of the given
// radius, refined by local hill climbing on the same sphere. Never exceeds
// the true supremum.
double estimate_sup_norm_onedim(const OneDimClosedForm &f, const BoundedOptions &opts = {});

// ||Psi_e(f, lambda, mu)|| <= ((M^2 - 1)/M) max{1, |((M^2 - 1) lambda + 1)/M|}
// at the sampled directions e, with margin tolerance 1e-6. Rejects M <= 1
// except for s = 1, which is reported as the limit case M = 1.
BoundReport check_bounded_onedim_bound(const OneDimClosedForm &f, cplx lambda, cplx mu = 0.0,
                                       const BoundedOptions &opts = {});
double bounded_onedim_bound(double m, cplx lambda);

// |<Psi_e(h, lambda, 0), e>| <= 2 max{1, |2 lambda - 1|} over sampled e.
BoundReport check_generator_scalar_bound(const MappingJet &h, cplx lambda, int directions, std::uint64_t seed);
// ||Psi_e(f, lambda, mu)|| <= max{1, |4 lambda - 3|} with the supremum over e.
BoundReport check_starlike_bound(const MappingJet &f, cplx lambda, cplx mu, const SupOptions &opts = {});

} // namespace fsjet
