#pragma once

#include <fsjet/hom_poly.hpp>
#include <fsjet/jet.hpp>
#include <fsjet/report.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fsjet
{

using MapFn = std::function<CVector(const CVector &)>;
using ScalarFn = std::function<cplx(const CVector &)>;

// Jet of a one-dimensional-type mapping f(x) = s(x) x with
// s(x) = 1 + p_1(x) + ... + p_{K-1}(x).
class OneDimJet
{
public:
    OneDimJet(int dim, int order);
    // factor_polys[j] is p_{j+1}, scalar valued (codomain 1).
    OneDimJet(int dim, int order, std::vector<HomPoly> factor_polys);

    int dim() const noexcept { return dim_; }
    int order() const noexcept { return order_; }
    // p_k for 1 <= k <= order - 1
    const HomPoly &factor_poly(int k) const;

    cplx factor(const CVector &x) const;
    MappingJet to_mapping() const;

private:
    int dim_;
    int order_;
    std::vector<HomPoly> polys_;
};

// Recovers s from f when every P_k factors as p_{k-1}(x) x; the fit residual
// is checked on the 2n real-coordinate directions plus 16 seeded random unit
// vectors, with threshold tol (1 + max coefficient).
std::optional<OneDimJet> detect_onedim(const MappingJet &f, double tol = 1e-10);

// g(x) = (s(<x, e>^n e))^(1/n) x on the principal branch. Output order
// defaults to min(n (K - 1) + 1, kMaxOrder) and must be at least 2n + 1.
MappingJet root_transform(const OneDimJet &f, int n, const CVector &e, std::optional<int> order = std::nullopt);

// Closed-form counterpart for an evaluable factor s.
MapFn root_transform_map(ScalarFn s, int n, CVector e);

struct InjectivityOptions {
    double radius = 0.95;
    double collision_tol = 1e-9;
    double separation = 1e-3;
    int newton_steps = 40;
};

// Falsification search for g(x1) = g(x2) with x1 != x2 inside the ball: for
// each sampled x1, Newton's method on g(x2) = g(x1) is started from a second
// sample. Any converged pair with ||x1 - x2|| > separation is a violation.
// PASS means no violation was found, not that g is injective.
Report check_injectivity_sampled(const MapFn &g, int dim, int samples, std::uint64_t seed,
                                 const InjectivityOptions &opts = {});

} // namespace fsjet
