#include <fsjet/gallery.hpp>

#include <cmath>
#include <stdexcept>

namespace fsjet
{

namespace
{

constexpr cplx kI{0.0, 1.0};

// Taylor coefficients of 1/(2 + z) and of exp(-z) - 1.
std::vector<cplx> inv_two_plus(int terms)
{
    std::vector<cplx> c(static_cast<std::size_t>(terms));
    double v = 0.5;
    for (auto &x : c) {
        x = v;
        v *= -0.5;
    }
    return c;
}

std::vector<cplx> expm1_neg(int terms)
{
    std::vector<cplx> c(static_cast<std::size_t>(terms));
    double v = 1.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        v *= -1.0 / static_cast<double>(k);
        c[k] = v;
    }
    return c;
}

GalleryEntry identity_entry(int order)
{
    GalleryEntry g{"identity", "f(x) = x on C^2", MappingJet::identity(2, order),
                   [](const CVector &x) { return x; }, OneDimJet(2, order),
                   [](const CVector &) { return cplx{1.0}; }, basis_vector(2, 0),
                   [](cplx, cplx) { return CVector(2); }, {}};
    return g;
}

GalleryEntry koebe_entry(int order)
{
    // f(z) = z / (1 - z)^2 = sum k z^k, s(z) = sum (k + 1) z^k
    std::vector<HomPoly> ps;
    for (int k = 1; k < order; ++k) {
        HomPoly p(k, 1, 1);
        p.set_coeff(HomPoly::Key(static_cast<std::size_t>(k), 0), CVector{static_cast<double>(k + 1)});
        ps.push_back(std::move(p));
    }
    OneDimJet od(1, order, std::move(ps));
    auto s = [](const CVector &x) { return 1.0 / ((1.0 - x[0]) * (1.0 - x[0])); };
    return GalleryEntry{"koebe1d",
                        "Koebe function z/(1-z)^2 on the disk",
                        od.to_mapping(),
                        [s](const CVector &x) { return s(x) * x; },
                        od,
                        s,
                        basis_vector(1, 0),
                        [](cplx lambda, cplx) { return CVector{3.0 - 4.0 * lambda}; },
                        {}};
}

GalleryEntry example_5_6_entry(int order)
{
    // f = (x1 - x1^2/(2 + x1), x2 - x1^2/(2 + x1)). The printed second
    // denominator 2 + x2 is inconsistent with the printed P_3 and with
    // Df h = f for the paired generator; 2 + x1 is used.
    const int d = order;
    const Series x1 = Series::variable(2, d, 0);
    const auto c = inv_two_plus(d + 1);
    const Series q = x1 * x1 * compose_univariate(c, x1);
    const VecSeries s{x1 - q, Series::variable(2, d, 1) - q};
    auto fn = [](const CVector &x) {
        const cplx q = x[0] * x[0] / (2.0 + x[0]);
        return CVector{x[0] - q, x[1] - q};
    };
    return GalleryEntry{"example_5_6",
                        "starlike, not of one-dimensional type: (x1 - x1^2/(2+x1), x2 - x1^2/(2+x1))",
                        MappingJet::from_series(s, order),
                        fn,
                        std::nullopt,
                        {},
                        basis_vector(2, 0),
                        [](cplx lambda, cplx) {
                            const cplx v = (1.0 - lambda) / 4.0;
                            return CVector{v, v};
                        },
                        "second denominator read as 2+x1; the printed 2+x2 contradicts the printed P_3"};
}

GalleryEntry example_5_6_generator_entry(int order)
{
    const int d = order;
    const Series x1 = Series::variable(2, d, 0);
    const Series q = cplx{0.5} * (x1 * x1);
    const VecSeries s{x1 + q, Series::variable(2, d, 1) + q};
    auto fn = [](const CVector &x) {
        const cplx q = 0.5 * x[0] * x[0];
        return CVector{x[0] + q, x[1] + q};
    };
    return GalleryEntry{"example_5_6_generator",
                        "generator (x1 + x1^2/2, x2 + x1^2/2) of example_5_6",
                        MappingJet::from_series(s, order),
                        fn,
                        std::nullopt,
                        {},
                        basis_vector(2, 0),
                        [](cplx lambda, cplx) {
                            const cplx v = -lambda / 4.0;
                            return CVector{v, v};
                        },
                        {}};
}

GalleryEntry example_5_7_entry(int order)
{
    const int d = order;
    const Series x1 = Series::variable(2, d, 0);
    const Series x2 = Series::variable(2, d, 1);
    const auto c = expm1_neg(d + 1);
    const VecSeries s{x1, x2 + (x1 + x2) * compose_univariate(c, x1)};
    auto fn = [](const CVector &x) { return CVector{x[0], x[1] + (x[0] + x[1]) * (std::exp(-x[0]) - 1.0)}; };
    return GalleryEntry{"example_5_7",
                        "(x1, x2 + (x1 + x2)(exp(-x1) - 1))",
                        MappingJet::from_series(s, order),
                        fn,
                        std::nullopt,
                        {},
                        basis_vector(2, 0),
                        [](cplx, cplx mu) { return CVector{0.0, (1.0 - mu) / 2.0}; },
                        "the printed norm |1+mu/2| disagrees with the printed vector (0,(1-mu)/2); "
                        "the vector norm |1-mu|/2 is used"};
}

GalleryEntry rotated(GalleryEntry base)
{
    // g = U* f U, so Psi_e(g) = U* Psi_{Ue}(f); choosing e = U* e0 gives Ue = e0.
    const LinOp u = gallery_rotation();
    const LinOp ua = u.adjoint();
    GalleryEntry g = base;
    g.name = base.name + "_rotated";
    g.description = "U* f U for " + base.name + " with U = (1/sqrt 2)[[1, i], [i, 1]]";
    g.jet = unitary_conjugate(base.jet, u);
    g.closed_form = [f = base.closed_form, u, ua](const CVector &x) { return ua.apply(f(u.apply(x))); };
    g.onedim = std::nullopt;
    g.factor = {};
    g.reference_e = ua.apply(base.reference_e);
    g.expected_psi = [p = base.expected_psi, ua](cplx l, cplx m) { return ua.apply(p(l, m)); };
    return g;
}

} // namespace

LinOp gallery_rotation()
{
    const double r = 1.0 / std::sqrt(2.0);
    LinOp u(2);
    u(0, 0) = r;
    u(0, 1) = kI * r;
    u(1, 0) = kI * r;
    u(1, 1) = r;
    return u;
}

std::vector<std::string> gallery_names()
{
    return {"identity",        "koebe1d",
            "example_5_6",     "example_5_6_generator",
            "example_5_7",     "example_5_6_rotated",
            "example_5_6_generator_rotated", "example_5_7_rotated"};
}

GalleryEntry example_gallery(const std::string &name, int order)
{
    if (order < 2 || order > kMaxOrder) {
        throw std::invalid_argument("example_gallery: order must lie in [2, " + std::to_string(kMaxOrder) + "]");
    }
    if (name == "identity") {
        return identity_entry(order);
    }
    if (name == "koebe1d") {
        return koebe_entry(order);
    }
    if (name == "example_5_6") {
        return example_5_6_entry(order);
    }
    if (name == "example_5_6_generator") {
        return example_5_6_generator_entry(order);
    }
    if (name == "example_5_7") {
        return example_5_7_entry(order);
    }
    if (name == "example_5_6_rotated") {
        return rotated(example_5_6_entry(order));
    }
    if (name == "example_5_6_generator_rotated") {
        return rotated(example_5_6_generator_entry(order));
    }
    if (name == "example_5_7_rotated") {
        return rotated(example_5_7_entry(order));
    }
    throw std::invalid_argument("example_gallery: unknown name '" + name + "'");
}

} // namespace fsjet
