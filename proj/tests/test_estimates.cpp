#include <doctest.h>

#include "oracles.hpp"

#include <fsjet/estimates.hpp>
#include <fsjet/gallery.hpp>
#include <fsjet/sampling.hpp>
#include <fsjet/semigroup.hpp>

#include <cmath>
#include <stdexcept>

using namespace fsjet;

namespace
{

double psi_norm_sq(const MappingJet &f, const CVector &e, cplx l, cplx m)
{
    const double v = norm(fs_mapping(f, FSContext{e, l, m}).vector);
    return v * v;
}

// Random s = 1 + p_1 + p_2 on C^n with sup |s| at most 3.
OneDimClosedForm random_bounded(Rng &rng, int n)
{
    for (;;) {
        std::vector<HomPoly> ps{random_hom_poly(rng, 1, n, 1, 0.6), random_hom_poly(rng, 2, n, 1, 0.6)};
        OneDimJet s(n, 3, ps);
        OneDimClosedForm f{s, [s](const CVector &x) { return s.factor(x); }};
        if (estimate_sup_norm_onedim(f, BoundedOptions{2000, 0.999, 0, 1}) <= 3.0) {
            return f;
        }
    }
}

} // namespace

TEST_CASE("sup_norm_fs examples")
{
    CHECK(sup_norm_fs(MappingJet::identity(2), 0.3, 0.1).value == 0.0);

    const MappingJet f56 = example_gallery("example_5_6").jet;
    for (cplx l : {cplx{0.0}, cplx{0.5, 0.5}, cplx{3.0}}) {
        const double at_e1 = std::abs(1.0 - l) / (2.0 * std::sqrt(2.0));
        CHECK(std::abs(norm(fs_mapping(f56, FSContext{CVector{1.0, 0.0}, l, 0.2}).vector) - at_e1) < 1e-15);
        CHECK(sup_norm_fs(f56, l, 0.2).value >= at_e1 - 1e-15);
    }

    const MappingJet k = example_gallery("koebe1d").jet;
    for (cplx l : {cplx{0.0}, cplx{0.75}, cplx{-1.0, 2.0}}) {
        CHECK(std::abs(sup_norm_fs(k, l, 0.4).value - std::abs(3.0 - 4.0 * l)) < 1e-13);
    }
}

TEST_CASE("analytic gradient matches central differences")
{
    Rng rng(81);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const MappingJet f = random_jet(rng, n, 3);
        const CVector e = random_unit_vector(rng, n);
        const cplx l = random_complex(rng, 2.0);
        const cplx m = random_complex(rng, 2.0);
        const CVector g = sphere_tangent(e, fs_norm_sq_gradient(f, e, l, m));
        CHECK(std::abs(inner(g, e).real()) < 1e-13 * (1.0 + norm(g)));
        // Directional derivatives along random tangent directions, moving on
        // the sphere by the retraction (e + t d)/|e + t d|.
        for (int j = 0; j < 4; ++j) {
            const CVector d = sphere_tangent(e, random_unit_vector(rng, n));
            const double h = 1e-5;
            auto at = [&](double t) {
                const CVector x = e + t * d;
                return psi_norm_sq(f, x / norm(x), l, m);
            };
            const double fd = (at(h) - at(-h)) / (2.0 * h);
            const double an = inner(g, d).real();
            CHECK(std::abs(fd - an) < 1e-6 * (1.0 + std::abs(an)));
        }
    }
}

TEST_CASE("sup_norm_fs against the dense-grid oracle")
{
    Rng rng(82);
    for (int trial = 0; trial < 6; ++trial) {
        const MappingJet f = random_jet(rng, 2, 3);
        const cplx l = random_complex(rng, 2.0);
        const cplx m = random_complex(rng, 2.0);
        const SupResult s = sup_norm_fs(f, l, m, SupOptions{32, 200, derive_seed(3, static_cast<std::uint64_t>(trial))});
        const double grid = oracle::sup_grid(f, l, m);
        CHECK(std::abs(s.value - grid) < 1e-4);
        CHECK(std::abs(norm(s.witness) - 1.0) < 1e-12);
        CHECK(std::abs(std::sqrt(psi_norm_sq(f, s.witness, l, m)) - s.value) < 1e-12);
    }
}

TEST_CASE("reported supremum is monotone in the number of starts")
{
    Rng rng(83);
    const MappingJet f = random_jet(rng, 3, 3);
    double prev = -1.0;
    for (int starts : {1, 2, 4, 8, 16}) {
        const double v = sup_norm_fs(f, 0.3, cplx{0.2, 0.1}, SupOptions{starts, 30, 77}).value;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("bounded one-dimensional estimate")
{
    SUBCASE("s = 1")
    {
        const OneDimJet s(2, 3);
        const BoundReport r = check_bounded_onedim_bound({s, [](const CVector &) { return cplx{1.0}; }}, 0.5);
        CHECK(r.pass);
        CHECK(r.estimate == 0.0);
    }
    SUBCASE("rejects M <= 1")
    {
        // A closed form with sup 1/2 paired with a nonidentity jet.
        CHECK_THROWS_AS(check_bounded_onedim_bound({example_gallery("koebe1d").onedim.value(),
                                                    [](const CVector &) { return cplx{0.5}; }},
                                                   0.5),
                        std::invalid_argument);
    }
    SUBCASE("z (1 + z/2)")
    {
        HomPoly p1(1, 1, 1);
        p1.set_coeff({0}, CVector{0.5});
        const OneDimJet s(1, 3, {p1});
        const OneDimClosedForm f{s, [](const CVector &x) { return 1.0 + 0.5 * x[0]; }};
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                const cplx l{0.5 * i, 0.5 * j};
                const BoundReport r = check_bounded_onedim_bound(f, l);
                CHECK(r.m_sup == doctest::Approx(1.5).epsilon(2e-3));
                CHECK(r.m_sup <= 1.5);
                CHECK(r.estimate == doctest::Approx(std::abs(l) / 4.0));
                const double q = r.m_sup * r.m_sup - 1.0;
                CHECK(r.bound == doctest::Approx((q / r.m_sup) * std::max(1.0, std::abs((q * l + 1.0) / r.m_sup))));
                CHECK(r.pass);
            }
        }
    }
    SUBCASE("random one-dimensional factors")
    {
        Rng rng(84);
        for (int trial = 0; trial < 5; ++trial) {
            const OneDimClosedForm f = random_bounded(rng, 2);
            for (int j = 0; j < 10; ++j) {
                const BoundReport r =
                    check_bounded_onedim_bound(f, random_complex(rng, 3.0), random_complex(rng, 2.0),
                                               BoundedOptions{4000, 0.999, 16, derive_seed(9, j)});
                CHECK(r.m_sup > 1.0);
                CHECK(r.m_sup <= 3.0);
                CHECK(r.margin >= -1e-6);
            }
        }
    }
}

TEST_CASE("gallery")
{
    SUBCASE("names")
    {
        CHECK_THROWS_AS(example_gallery("nope"), std::invalid_argument);
        CHECK_THROWS_AS(example_gallery("identity", 1), std::invalid_argument);
        CHECK(example_gallery("identity").jet.is_identity());
        for (const auto &name : gallery_names()) {
            CHECK(example_gallery(name).name == name);
        }
    }
    SUBCASE("printed homogeneous parts")
    {
        const MappingJet f56 = example_gallery("example_5_6").jet;
        HomPoly p2(2, 2, 2);
        p2.set_coeff({0, 0}, CVector{-0.5, -0.5});
        HomPoly p3(3, 2, 2);
        p3.set_coeff({0, 0, 0}, CVector{0.25, 0.25});
        CHECK(f56.poly(2).approx_equal(p2, {1e-15, 0.0}));
        CHECK(f56.poly(3).approx_equal(p3, {1e-15, 0.0}));

        const MappingJet f57 = example_gallery("example_5_7").jet;
        // (0, -x1 (x1 + x2)) and (0, x1^2 (x1 + x2) / 2)
        HomPoly q2(2, 2, 2);
        q2.set_coeff({0, 0}, CVector{0.0, -1.0});
        q2.set_coeff({0, 1}, CVector{0.0, -0.5});
        HomPoly q3(3, 2, 2);
        q3.set_coeff({0, 0, 0}, CVector{0.0, 0.5});
        q3.set_coeff({0, 0, 1}, CVector{0.0, 0.5 / 3.0});
        CHECK(f57.poly(2).approx_equal(q2, {1e-15, 0.0}));
        CHECK(f57.poly(3).approx_equal(q3, {1e-15, 0.0}));
    }
    SUBCASE("jets match their closed forms")
    {
        Rng rng(85);
        for (const auto &name : gallery_names()) {
            const GalleryEntry g = example_gallery(name, 6);
            const CVector v = random_unit_vector(rng, g.jet.dim());
            const auto c = oracle::ray_coeffs(
                [&](const oracle::LVec &x) {
                    CVector xd(x.size());
                    for (std::size_t i = 0; i < x.size(); ++i) {
                        xd[i] = cplx(static_cast<double>(x[i].real()), static_cast<double>(x[i].imag()));
                    }
                    const CVector y = g.closed_form(0.2 * xd);
                    oracle::LVec out(y.size());
                    for (std::size_t i = 0; i < y.size(); ++i) {
                        out[i] = oracle::lcplx(y[i]);
                    }
                    return out;
                },
                v, 64);
            for (int k = 2; k <= 6; ++k) {
                const CVector ref = std::pow(0.2, -k) * c[static_cast<std::size_t>(k)];
                CHECK(max_abs(g.jet.poly(k).eval(v) - ref) < 1e-9);
            }
        }
    }
    SUBCASE("expected Fekete-Szego values")
    {
        for (const auto &name : gallery_names()) {
            const GalleryEntry g = example_gallery(name);
            for (int i = 0; i < 5; ++i) {
                for (int j = 0; j < 5; ++j) {
                    const cplx l{-1.0 + 0.5 * i, 0.25 * j};
                    const cplx m{1.0 - 0.5 * j, -0.25 * i};
                    const CVector v = fs_mapping(g.jet, FSContext{g.reference_e, l, m}).vector;
                    CHECK(max_abs(v - g.expected_psi(l, m)) < 1e-12);
                }
            }
        }
    }
    SUBCASE("example_5_7 norm")
    {
        const GalleryEntry g = example_gallery("example_5_7");
        CHECK_FALSE(g.note.empty());
        for (cplx m : {cplx{0.0}, cplx{2.0}, cplx{-1.0, 1.0}}) {
            const double v = norm(fs_mapping(g.jet, FSContext{g.reference_e, 0.3, m}).vector);
            CHECK(std::abs(v - std::abs(1.0 - m) / 2.0) < 1e-15);
        }
        // The printed |1 + mu/2| differs, e.g. at mu = 0: 1 versus 1/2.
        CHECK(std::abs(norm(fs_mapping(g.jet, FSContext{g.reference_e, 0.3, 0.0}).vector) - 1.0) > 0.4);
    }
    SUBCASE("the example_5_6 generator passes the sampled test")
    {
        const GalleryEntry g = example_gallery("example_5_6_generator");
        CHECK(is_generator(g.closed_form, 2, 4000, 5).pass);
    }
}
