#pragma once

#include <fsjet/hom_poly.hpp>
#include <fsjet/jet.hpp>
#include <fsjet/linalg.hpp>
#include <fsjet/transforms.hpp>

#include <cstdint>
#include <random>

namespace fsjet
{

using Rng = std::mt19937_64;

// splitmix64 of (master, index); per-trial and per-start seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

double uniform(Rng &rng, double lo, double hi);
// Uniform in the disk of the given radius.
cplx random_complex(Rng &rng, double radius = 1.0);
CVector random_unit_vector(Rng &rng, int n);
// Uniform in the ball of the given radius.
CVector random_in_ball(Rng &rng, int n, double radius);

// Symmetric tensor with entries uniform in the disk of radius `scale`.
HomPoly random_hom_poly(Rng &rng, int degree, int n, int m, double scale = 1.0);
MappingJet random_jet(Rng &rng, int n, int order, double scale = 1.0);
// Haar-distributed unitary (Gram-Schmidt on a complex Gaussian matrix).
LinOp random_unitary(Rng &rng, int n);

// P(x) = p(x) x with a random scalar p of degree k - 1.
HomPoly random_onedim_part(Rng &rng, int degree, int n, double scale = 1.0);

// s = 1 + p_1 + ... + p_{order-1} with random scalar parts.
OneDimJet random_onedim_jet(Rng &rng, int n, int order, double scale = 0.5);

// min over r in (0, 1] of  r a + r^2 b
double min_linear_quadratic(double a, double b);

// Generator candidate x + H_2 + H_3 rescaled so that the sampled minimum of
// Re <h(x), x> / ||x||^2 over the ball stays nonnegative with the given safety
// factor. With onedim set, H_2 and H_3 are of one-dimensional type.
MappingJet random_generator(Rng &rng, int n, bool onedim = false, int probes = 2000, double safety = 0.9);

} // namespace fsjet
