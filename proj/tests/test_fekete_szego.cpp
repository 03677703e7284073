#include <doctest.h>

#include "oracles.hpp"

#include <fsjet/fekete_szego.hpp>
#include <fsjet/gallery.hpp>
#include <fsjet/sampling.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace fsjet;

namespace
{

CVector psi(const MappingJet &f, const CVector &e, cplx l, cplx m)
{
    return fs_mapping(f, FSContext{e, l, m}).vector;
}

// Jet with one-dimensional type P_2 and, optionally, P_3.
MappingJet onedim_jet(Rng &rng, int n, bool cubic_onedim)
{
    MappingJet f(n, 3);
    f.set_poly(random_onedim_part(rng, 2, n, 0.5));
    f.set_poly(cubic_onedim ? random_onedim_part(rng, 3, n, 0.5) : random_hom_poly(rng, 3, n, n, 0.5));
    return f;
}

double tol(const MappingJet &f, double t)
{
    return t * (1.0 + f.max_coeff_abs());
}

} // namespace

TEST_CASE("FSContext validates the direction")
{
    CHECK_NOTHROW(FSContext::make(CVector{1.0, 0.0}, 0.0, 0.0));
    CHECK_THROWS_AS(FSContext::make(CVector{1.0, 0.1}, 0.0, 0.0), std::invalid_argument);
    const MappingJet f = MappingJet::identity(2);
    CHECK_THROWS_AS(fs_mapping(f, FSContext{CVector{1.0}, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("fs_mapping examples")
{
    Rng rng(31);
    const CVector e = random_unit_vector(rng, 3);
    CHECK(is_zero(psi(MappingJet::identity(3), e, cplx{0.3, 1.0}, 2.0)));

    const MappingJet f56 = example_gallery("example_5_6").jet;
    for (cplx l : {cplx{0.0}, cplx{0.5}, cplx{1.0, -2.0}}) {
        const cplx v = (1.0 - l) / 4.0;
        CHECK(max_abs(psi(f56, CVector{1.0, 0.0}, l, cplx{0.7, 0.1}) - CVector{v, v}) < 1e-15);
    }

    const MappingJet k = example_gallery("koebe1d").jet;
    for (cplx l : {cplx{0.0}, cplx{0.25}, cplx{-1.0, 0.5}}) {
        for (cplx m : {cplx{0.0}, cplx{1.0}, cplx{3.0, 1.0}}) {
            CHECK(std::abs(psi(k, CVector{1.0}, l, m)[0] - (3.0 - 4.0 * l)) < 1e-14);
        }
    }
}

TEST_CASE("fs_mapping agrees with the polarization oracle")
{
    Rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 3;
        const MappingJet f = random_jet(rng, n, 3);
        const CVector e = random_unit_vector(rng, n);
        const cplx l = random_complex(rng, 2.0);
        const cplx m = random_complex(rng, 2.0);
        CHECK(max_abs(psi(f, e, l, m) - oracle::psi(f, e, l, m)) < tol(f, 1e-13));
        const FSValue v = fs_mapping(f, FSContext{e, l, m});
        CHECK(v.scalar_projection == inner(v.vector, e));
    }
}

TEST_CASE("scalar variants")
{
    CHECK(scalar_variant_mu(1) == cplx{0.0});
    CHECK(scalar_variant_mu(2) == cplx{1.0});
    CHECK(std::abs(scalar_variant_mu(3) - 2.0 / 3.0) < 1e-16);
    CHECK(scalar_variant_mu(4) == cplx{2.0});
    CHECK_THROWS_AS(scalar_variant_mu(0), std::invalid_argument);
    CHECK_THROWS_AS(scalar_variant_mu(5), std::invalid_argument);

    Rng rng(33);
    const CVector e = random_unit_vector(rng, 2);
    const MappingJet k = example_gallery("koebe1d").jet;
    for (int v = 1; v <= 4; ++v) {
        CHECK(fs_scalar(MappingJet::identity(2), e, 0.4, v) == cplx{0.0});
        CHECK(std::abs(fs_scalar(k, CVector{1.0}, 0.3, v) - (3.0 - 1.2)) < 1e-14);
    }

    for (int trial = 0; trial < 20; ++trial) {
        const MappingJet f = onedim_jet(rng, 3, false);
        const CVector d = random_unit_vector(rng, 3);
        const cplx l = random_complex(rng, 2.0);
        const cplx ref = fs_scalar(f, d, l, 1);
        for (int v = 2; v <= 4; ++v) {
            CHECK(std::abs(fs_scalar(f, d, l, v) - ref) < tol(f, 1e-13));
        }
    }
}

TEST_CASE("operator variant")
{
    Rng rng(34);
    for (int trial = 0; trial < 20; ++trial) {
        const MappingJet f = random_jet(rng, 2, 3);
        const CVector e = random_unit_vector(rng, 2);
        const cplx l = random_complex(rng, 2.0);
        CHECK(std::abs(fs_operator_variant(f, e, LinOp::identity(2), l) - fs_scalar(f, e, l, 2)) < tol(f, 1e-13));
        const LinOp a = LinOp::diagonal(CVector{2.0, 3.0});
        const cplx ref = oracle::psi_operator(f, e, a, l);
        CHECK(std::abs(fs_operator_variant(f, e, a, l) - ref) < tol(f, 1e-12) * (1.0 + std::abs(ref)));
        LinOp g(2);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                g(i, j) = random_complex(rng);
            }
        }
        const cplx ref2 = oracle::psi_operator(f, e, g, l);
        CHECK(std::abs(fs_operator_variant(f, e, g, l) - ref2) < tol(f, 1e-12) * (1.0 + std::abs(ref2)));
    }
    const CVector e{0.6, 0.8};
    CHECK(fs_operator_variant(MappingJet::identity(2), e, LinOp::diagonal(CVector{2.0, 3.0}), 0.5) == cplx{0.0});
    CHECK_THROWS_AS(fs_operator_variant(MappingJet::identity(2), e, LinOp::identity(3), 0.5), std::invalid_argument);
}

TEST_CASE("mu-independence and alignment for one-dimensional type")
{
    Rng rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 3;
        const MappingJet f = onedim_jet(rng, n, false);
        const CVector e = random_unit_vector(rng, n);
        const cplx l = random_complex(rng, 2.0);
        CHECK(max_abs(psi(f, e, l, random_complex(rng, 3.0)) - psi(f, e, l, random_complex(rng, 3.0))) <
              tol(f, 1e-12));

        const MappingJet g = onedim_jet(rng, n, true);
        const FSValue v = fs_mapping(g, FSContext{e, l, random_complex(rng, 2.0)});
        CHECK(max_abs(v.vector - v.scalar_projection * e) < tol(g, 1e-12));
    }
}

TEST_CASE("composition identity")
{
    Rng rng(36);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 2;
        const MappingJet f = random_jet(rng, n, 3);
        const MappingJet g = random_jet(rng, n, 3);
        const CVector e = random_unit_vector(rng, n);
        const cplx l = random_complex(rng, 2.0);
        const cplx m = random_complex(rng, 2.0);
        const CVector p2 = f.poly(2).eval(e);
        const CVector q2 = g.poly(2).eval(e);
        const CVector rhs = psi(f, e, l, m) + psi(g, e, l, m) -
                            (l - m) * (inner(p2, e) * q2 + inner(q2, e) * p2) - m * oracle::polar2(g.poly(2), e, p2) -
                            (m - 2.0) * oracle::polar2(f.poly(2), e, q2);
        CHECK(max_abs(psi(compose(f, g), e, l, m) - rhs) < 1e-11 * (1.0 + f.max_coeff_abs() * g.max_coeff_abs()));
    }
}

TEST_CASE("one-dimensional composition")
{
    Rng rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const MappingJet f = onedim_jet(rng, 3, true);
        const MappingJet g = onedim_jet(rng, 3, true);
        const CVector e = random_unit_vector(rng, 3);
        const cplx l = random_complex(rng, 2.0);
        const cplx m = random_complex(rng, 2.0);
        const cplx p2 = inner(f.poly(2).eval(e), e);
        const cplx q2 = inner(g.poly(2).eval(e), e);
        const CVector rhs = psi(f, e, l, m) + psi(g, e, l, m) - (2.0 * (l - 1.0) * p2 * q2) * e;
        CHECK(max_abs(psi(compose(f, g), e, l, m) - rhs) < 1e-12);
    }
}

TEST_CASE("inverse duality")
{
    Rng rng(38);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 2;
        const MappingJet f = random_jet(rng, n, 3);
        const MappingJet fi = invert(f);
        const CVector e = random_unit_vector(rng, n);
        const cplx l = random_complex(rng, 2.0);
        const cplx m = random_complex(rng, 2.0);
        CHECK(max_abs(psi(fi, e, l, m) + psi(f, e, 2.0 - l, 2.0 - m)) < tol(f, 1e-11));
        CHECK(max_abs(fi.poly(3).eval(e) + psi(f, e, 2.0, 2.0)) < tol(f, 1e-11));
    }
}

TEST_CASE("iterate scaling and the psi(2) power rule")
{
    Rng rng(39);
    for (int trial = 0; trial < 10; ++trial) {
        const MappingJet f = random_jet(rng, 2, 3, 0.5);
        const CVector e = random_unit_vector(rng, 2);
        const cplx l = random_complex(rng, 2.0);
        const cplx m = random_complex(rng, 2.0);
        for (int k = -3; k <= 3; ++k) {
            if (k == 0) {
                continue;
            }
            const MappingJet fk = iterate(f, k);
            const double kd = k;
            const CVector lhs = psi(fk, e, l, m);
            const CVector rhs = kd * psi(f, e, kd * l - kd + 1.0, kd * m - kd + 1.0);
            CHECK(max_abs(lhs - rhs) < 1e-10 * (1.0 + max_abs(rhs)));
            const cplx s = fs_scalar(fk, e, l, 2);
            const cplx sr = kd * fs_scalar(f, e, kd * l - kd + 1.0, 2);
            CHECK(std::abs(s - sr) < 1e-10 * (1.0 + std::abs(sr)));
        }
    }
}

TEST_CASE("unitary transform")
{
    // 1-D rotation u: psi(g) = u^2 psi(f)
    const MappingJet k = example_gallery("koebe1d").jet;
    const double th = 0.7;
    const cplx u = std::polar(1.0, th);
    const MappingJet g = unitary_conjugate(k, LinOp::diagonal(CVector{u}));
    for (cplx l : {cplx{0.0}, cplx{0.3, 0.4}}) {
        CHECK(std::abs(fs_scalar(g, CVector{1.0}, l, 1) - u * u * fs_scalar(k, CVector{1.0}, l, 1)) < 1e-14);
    }

    Rng rng(40);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 2;
        const MappingJet f = random_jet(rng, n, 3);
        const LinOp U = random_unitary(rng, n);
        const MappingJet h = unitary_conjugate(f, U);
        const CVector e = random_unit_vector(rng, n);
        const cplx l = random_complex(rng, 2.0);
        const cplx m = random_complex(rng, 2.0);
        const CVector rhs = U.adjoint().apply(psi(f, U.apply(e), l, m));
        CHECK(max_abs(psi(h, e, l, m) - rhs) < tol(f, 1e-12));
    }
}

TEST_CASE("bilinear operator norm")
{
    CHECK(operator_norm_bilinear(HomPoly(2, 3, 3)).value == 0.0);
    HomPoly b1(2, 1, 1);
    b1.set_coeff({0, 0}, CVector{cplx{0.6, -0.8} * 1.7});
    CHECK(std::abs(operator_norm_bilinear(b1).value - 1.7) < 1e-12);

    HomPoly b(2, 2, 2);
    b.set_coeff({0, 0}, CVector{-0.5, -0.5});
    CHECK(std::abs(operator_norm_bilinear(b).value - std::sqrt(2.0) / 2.0) < 1e-12);
    CHECK_THROWS_AS(operator_norm_bilinear(HomPoly(3, 2, 2)), std::invalid_argument);

    // Dense grid over u, v on the unit sphere of C^2 (a common phase of each
    // drops out of ||B[u, v]||).
    Rng rng(41);
    for (int trial = 0; trial < 3; ++trial) {
        const HomPoly r = random_hom_poly(rng, 2, 2, 2);
        const BilinearNorm est = operator_norm_bilinear(r);
        const CVector args[2] = {est.u, est.v};
        CHECK(std::abs(norm(r.multilinear_eval(args)) - est.value) < 1e-12);
        double grid = 0.0;
        const int g = 24;
        for (int a = 0; a <= g; ++a) {
            for (int pa = 0; pa < 2 * g; ++pa) {
                const double t = std::numbers::pi / 2 * a / g;
                const CVector u{std::cos(t), std::sin(t) * std::polar(1.0, std::numbers::pi * pa / g)};
                for (int c = 0; c <= g; ++c) {
                    for (int pc = 0; pc < 2 * g; ++pc) {
                        const double s = std::numbers::pi / 2 * c / g;
                        const CVector v{std::cos(s), std::sin(s) * std::polar(1.0, std::numbers::pi * pc / g)};
                        const CVector uv[2] = {u, v};
                        grid = std::max(grid, norm(r.multilinear_eval(uv)));
                    }
                }
            }
        }
        // The grid is a lower bound; the estimate may only exceed it slightly.
        CHECK(est.value >= grid - 1e-12);
        CHECK(est.value <= grid * 1.02);
    }
}

TEST_CASE("composition error term")
{
    Rng rng(42);
    SUBCASE("vanishes when one quadratic part vanishes")
    {
        MappingJet f = random_jet(rng, 2, 3);
        MappingJet g(2, 3);
        g.set_poly(random_hom_poly(rng, 3, 2, 2));
        const FSContext ctx{random_unit_vector(rng, 2), random_complex(rng), random_complex(rng)};
        CHECK(max_abs(fs_error_term(f, g, ctx).residual) < 1e-14);
        CHECK(max_abs(fs_error_term(g, f, ctx).residual) < 1e-14);
    }
    SUBCASE("one-dimensional case is an equality")
    {
        for (int trial = 0; trial < 20; ++trial) {
            const MappingJet f = onedim_jet(rng, 2, true);
            const MappingJet g = onedim_jet(rng, 2, true);
            const CVector e = random_unit_vector(rng, 2);
            const FSContext ctx{e, random_complex(rng, 2.0), random_complex(rng, 2.0)};
            const ErrorTerm r = fs_error_term(f, g, ctx);
            const cplx p2 = inner(f.poly(2).eval(e), e);
            const cplx q2 = inner(g.poly(2).eval(e), e);
            CHECK(std::abs(norm(r.residual) - 2.0 * std::abs(1.0 - ctx.lambda) * std::abs(p2 * q2)) < 1e-12);
        }
    }
    SUBCASE("bound holds on random pairs")
    {
        for (int trial = 0; trial < 100; ++trial) {
            const MappingJet f = random_jet(rng, 2, 3);
            const MappingJet g = random_jet(rng, 2, 3);
            const FSContext ctx{random_unit_vector(rng, 2), random_complex(rng, 2.0), random_complex(rng, 2.0)};
            const ErrorTerm r = fs_error_term(f, g, ctx);
            CHECK(norm(r.residual) <= r.bound + 1e-9);
        }
        CHECK(composition_error_factor(1.0, 1.0) == 2.0);
        CHECK(composition_error_factor(0.0, 2.0) == 6.0);
    }
}
