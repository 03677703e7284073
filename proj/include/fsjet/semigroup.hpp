#pragma once

#include <fsjet/jet.hpp>
#include <fsjet/report.hpp>
#include <fsjet/transforms.hpp>

#include <cstdint>
#include <vector>

namespace fsjet
{

// Semigroup element u_t(x) = exp(-t) [x + S_2(t, x) + S_3(t, x) + ...];
// `bracket` holds the normalized jet x + sum S_k.
struct FlowJet {
    double t = 0.0;
    MappingJet bracket;

    double scale() const;
    CVector eval(const CVector &x) const;
};

// Sampled test of Re <h(x), x> >= 0 over the ball of the given radius (half
// the samples uniform in the ball, half on its boundary sphere).
// PASS iff the sampled minimum is >= -1e-10; a falsification test only.
Report is_generator(const MapFn &h, int dim, int samples, std::uint64_t seed, double radius = 1.0 - 1e-3);
Report is_generator(const MappingJet &h, int samples, std::uint64_t seed, double radius = 1.0 - 1e-3);

// lambda(t) = 2 (1 - exp(-t)) / (1 + exp(-t))
double semigroup_lambda(double t);

// Closed-form order-3 jet of u_t for the generator h (h.order >= 3; higher
// parts of h are ignored):
//   S_2 = (exp(-t) - 1) H_2,
//   S_3 = (exp(-2t) - 1)/2 H_3 + (1 - exp(-t))^2 H_2[x, H_2(x)].
FlowJet semigroup_jet(const MappingJet &h, double t);

// u_s o u_t as a flow jet at time s + t.
FlowJet compose(const FlowJet &outer, const FlowJet &inner);

struct OdeResult {
    CVector value;
    bool left_ball = false;
    int steps = 0;
};

// Classical fourth-order Runge-Kutta for du/dt = -h(u), u(0) = x0 on [0, t]
// with ceil(t / step) equal steps.
OdeResult semigroup_ode(const MappingJet &h, double t, const CVector &x0, double step);

// Taylor coefficients c_0..c_max of z -> fn(z v), from `samples` points on the
// circle |z| = radius (discrete Cauchy integral). For a holomorphic fn, c_k is
// the degree-k homogeneous part evaluated at v.
std::vector<CVector> ray_taylor_coefficients(const MapFn &fn, const CVector &v, int max_degree, double radius,
                                             int samples);

struct FlowParts {
    CVector degree2; // (1/2!) D^2 u_t(0)[e^2]
    CVector degree3; // (1/3!) D^3 u_t(0)[e^3]
};

// Degree-2/3 parts of u_t along e recovered from the ODE alone.
FlowParts flow_parts_from_ode(const MappingJet &h, double t, const CVector &e, double step = 2e-3,
                              double radius = 0.25, int samples = 16);

// Starlike f with Df(x)[h(x)] = f(x), solved degree by degree up to h.order.
MappingJet starlike_from_generator(const MappingJet &h);
// The generator h of a starlike f, inverse of the above.
MappingJet generator_from_starlike(const MappingJet &f);

} // namespace fsjet
