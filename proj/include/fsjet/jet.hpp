#pragma once

#include <fsjet/hom_poly.hpp>
#include <fsjet/linalg.hpp>

#include <vector>

namespace fsjet
{

inline constexpr int kMaxOrder = 9;
inline constexpr int kDefaultOrder = 3;

// Normalized truncated mapping jet f(x) = x + P_2(x) + ... + P_K(x) on C^n.
class MappingJet
{
public:
    MappingJet(int dim, int order);
    // polys[j] must have degree j + 2; missing trailing degrees are zero.
    MappingJet(int dim, int order, std::vector<HomPoly> polys);

    static MappingJet identity(int dim, int order = kDefaultOrder) { return MappingJet(dim, order); }

    int dim() const noexcept { return dim_; }
    int order() const noexcept { return order_; }

    // Degree-k part, 2 <= k <= order.
    const HomPoly &poly(int k) const;
    void set_poly(HomPoly p);

    bool is_identity() const;
    double max_coeff_abs() const;

    CVector eval(const CVector &x) const;
    // Df(x)[v]
    CVector derivative_apply(const CVector &x, const CVector &v) const;

    MappingJet truncated(int order) const;
    bool approx_equal(const MappingJet &o, Tolerance tol = {}) const;

    VecSeries to_series(int max_degree) const;
    // x + sum of the degree 2..order parts of s (the linear part of s is ignored).
    static MappingJet from_series(const VecSeries &s, int order);

private:
    int dim_;
    int order_;
    std::vector<HomPoly> polys_; // degrees 2..order
};

// f o g, truncated at min(f.order, g.order).
MappingJet compose(const MappingJet &f, const MappingJet &g);
// Jet inverse: compose(f, invert(f)) is the identity up to f.order.
MappingJet invert(const MappingJet &f);
// m-fold composition; negative m iterates the inverse, m = 0 is the identity.
MappingJet iterate(const MappingJet &f, int m);
// U* o f o U. Rejects U whose unitarity residual exceeds tol.
MappingJet unitary_conjugate(const MappingJet &f, const LinOp &u, double tol = 1e-12);

// Closed forms for the degree-2 and degree-3 parts of f o g:
// R_2 = P_2 + Q_2 and R_3 = 2 B[x, Q_2(x)] + P_3 + Q_3 with B the tensor of P_2.
HomPoly compose_degree2(const MappingJet &f, const MappingJet &g);
HomPoly compose_degree3(const MappingJet &f, const MappingJet &g);

} // namespace fsjet
