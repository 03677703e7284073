#include <doctest.h>

#include <fsjet/gallery.hpp>
#include <fsjet/sampling.hpp>
#include <fsjet/spec_io.hpp>

#include <cmath>
#include <string>

using namespace fsjet;

namespace
{

const std::string kData = FSJET_TEST_DATA;

bool same_jet(const MappingJet &a, const MappingJet &b)
{
    if (a.dim() != b.dim() || a.order() != b.order()) {
        return false;
    }
    for (int k = 2; k <= a.order(); ++k) {
        if (a.poly(k).coeffs() != b.poly(k).coeffs()) {
            return false;
        }
    }
    return true;
}

bool same_onedim(const OneDimJet &a, const OneDimJet &b)
{
    if (a.dim() != b.dim() || a.order() != b.order()) {
        return false;
    }
    for (int k = 1; k < a.order(); ++k) {
        if (a.factor_poly(k).coeffs() != b.factor_poly(k).coeffs()) {
            return false;
        }
    }
    return true;
}

SpecError spec_error(std::string_view text)
{
    try {
        parse_mapping_spec(text);
    } catch (const SpecError &e) {
        return e;
    }
    FAIL("expected a SpecError");
    return SpecError("unreachable");
}

} // namespace

TEST_CASE("round trip on random jets is exact")
{
    for (int t = 0; t < 30; ++t) {
        Rng rng(derive_seed(7, t));
        const int n = 1 + t % 4;
        const int order = 2 + t % 6;
        const MappingSpec s{random_jet(rng, n, order), std::nullopt, std::nullopt};
        const std::string text = serialize_mapping_spec(s);
        const MappingSpec back = parse_mapping_spec(text);
        CHECK(same_jet(s.jet, back.jet));
        CHECK_FALSE(back.onedim);
        CHECK_FALSE(back.flow);
        CHECK(serialize_mapping_spec(back) == text);
    }
}

TEST_CASE("round trip keeps onedim and flow blocks")
{
    Rng rng(11);
    const OneDimJet s = random_onedim_jet(rng, 3, 5);
    const MappingSpec spec{s.to_mapping(), s, FlowInfo{0.7, std::exp(-0.7)}};
    const MappingSpec back = parse_mapping_spec(serialize_mapping_spec(spec));
    CHECK(same_jet(spec.jet, back.jet));
    REQUIRE(back.onedim);
    CHECK(same_onedim(s, *back.onedim));
    REQUIRE(back.flow);
    CHECK(back.flow->t == 0.7);
    CHECK(back.flow->scale == std::exp(-0.7));
}

TEST_CASE("onedim block alone defines the jet")
{
    const MappingSpec k = load_mapping_spec(kData + "/koebe1d.json");
    CHECK(std::abs(k.jet.eval(CVector{0.1})[0] - (0.1 + 2 * 0.01 + 3 * 0.001)) < 1e-15);
    const auto s = parse_mapping_spec(R"({"dim": 1, "order": 3, "onedim": {"order": 3, "polys": [
        {"degree": 1, "entries": [{"index": [1], "value": [2, 0]}]},
        {"degree": 2, "entries": [{"index": [1, 1], "value": [3, 0]}]}]}})");
    CHECK(same_jet(s.jet, k.jet));
}

TEST_CASE("gallery spec files match the gallery")
{
    for (const char *name : {"identity", "koebe1d", "example_5_6", "example_5_6_generator", "example_5_7"}) {
        CAPTURE(name);
        const MappingSpec s = load_mapping_spec(kData + "/" + name + ".json");
        CHECK(same_jet(s.jet, example_gallery(name).jet));
    }
}

TEST_CASE("syntax errors carry line and column")
{
    const SpecError e = spec_error("{\n  \"dim\": 2,\n  \"order\": 3\n  \"polys\": []\n}\n");
    CHECK(e.line() == 4);
    CHECK(e.column() > 0);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);

    const SpecError trunc = spec_error("{\"dim\": 2,");
    CHECK(trunc.line() == 1);
}

TEST_CASE("schema errors carry a JSON path")
{
    struct Case {
        const char *text;
        const char *path;
    };
    const Case cases[] = {
        {R"({"dim": 2})", "$.order"},
        {R"({"dim": 0, "order": 3})", "$.dim"},
        {R"({"dim": 2, "order": 3, "extra": 1})", "$.extra"},
        {R"({"dim": 2, "order": 3, "polys": [{"degree": 4, "entries": []}]})", "$.polys[0].degree"},
        {R"({"dim": 2, "order": 3, "polys": [{"degree": 2, "entries": [{"index": [2, 1], "value": [[1, 0], [0, 0]]}]}]})",
         "$.polys[0].entries[0].index"},
        {R"({"dim": 2, "order": 3, "polys": [{"degree": 2, "entries": [{"index": [1, 3], "value": [[1, 0], [0, 0]]}]}]})",
         "$.polys[0].entries[0].index"},
        {R"({"dim": 2, "order": 3, "polys": [{"degree": 2, "entries": [{"index": [1, 1], "value": [[1, 0]]}]}]})",
         "$.polys[0].entries[0].value"},
        {R"({"dim": 1, "order": 3, "polys": [], "flow": {"t": -1, "scale": 1}})", "$.flow.t"},
        {R"({"dim": 1, "order": 3, "polys": [], "flow": {"t": 1, "scale": 1}})", "$.flow.scale"},
        {R"({"dim": 1, "order": 3, "onedim": {"order": 4, "polys": []}})", "$.onedim.order"},
    };
    for (const auto &c : cases) {
        const std::string text = c.text;
        const SpecError e = spec_error(text);
        const std::string path = e.path();
        CAPTURE(text);
        CAPTURE(path);
        CHECK(e.path().rfind(c.path, 0) == 0);
    }
}

TEST_CASE("number overflow is a spec error")
{
    CHECK_THROWS_AS(
        parse_mapping_spec(R"({"dim": 1, "order": 3, "polys": [{"degree": 2, "entries": [{"index": [1, 1], "value": [[1e999, 0]]}]}]})"),
        SpecError);
}

TEST_CASE("polys and onedim must agree")
{
    const SpecError e = spec_error(R"({"dim": 1, "order": 2,
        "polys": [{"degree": 2, "entries": [{"index": [1, 1], "value": [[1, 0]]}]}],
        "onedim": {"order": 2, "polys": [{"degree": 1, "entries": [{"index": [1], "value": [2, 0]}]}]}})");
    CHECK(std::string(e.what()).find("onedim") != std::string::npos);
}

TEST_CASE("duplicate entries are rejected")
{
    CHECK_THROWS_AS(parse_mapping_spec(R"({"dim": 1, "order": 3, "polys": [
        {"degree": 2, "entries": [{"index": [1, 1], "value": [[1, 0]]}, {"index": [1, 1], "value": [[1, 0]]}]}]})"),
                    SpecError);
    CHECK_THROWS_AS(parse_mapping_spec(R"({"dim": 1, "order": 3, "polys": [
        {"degree": 2, "entries": []}, {"degree": 2, "entries": []}]})"),
                    SpecError);
}

TEST_CASE("matrix files")
{
    const LinOp u = load_matrix(kData + "/rotation.json");
    CHECK(u.dim() == 2);
    CHECK(u.unitarity_residual() < 1e-15);
    CHECK(load_matrix(kData + "/not_unitary.json").unitarity_residual() == doctest::Approx(0.5));

    Rng rng(3);
    const LinOp r = random_unitary(rng, 3);
    const LinOp back = parse_matrix(serialize_matrix(r));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(back(i, j) == r(i, j));
        }
    }
    CHECK_THROWS_AS(parse_matrix(R"({"matrix": [[[1, 0], [0, 0]]]})"), SpecError);
    CHECK_THROWS_AS(parse_matrix(R"({"matrix": []})"), SpecError);
    CHECK_THROWS_AS(load_matrix(kData + "/missing.json"), SpecError);
}
