#include <fsjet/cli.hpp>
#include <fsjet/fekete_szego.hpp>
#include <fsjet/gallery.hpp>
#include <fsjet/semigroup.hpp>
#include <fsjet/spec_io.hpp>
#include <fsjet/transforms.hpp>
#include <fsjet/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>

namespace fsjet
{

namespace
{

constexpr std::uint64_t kDefaultSeed = 42;

// Usage-level failure: reported on err, exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(std::string_view s, std::string_view whole)
{
    double v = 0.0;
    const char *b = s.data();
    const char *e = s.data() + s.size();
    if (!s.empty() && *b == '+') {
        ++b;
    }
    const auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || b == e) {
        throw std::invalid_argument("malformed complex number '" + std::string(whole) + "'");
    }
    return v;
}

std::uint64_t parse_seed(std::string_view s)
{
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
        throw UsageError("invalid seed '" + std::string(s) + "'");
    }
    return v;
}

std::uint64_t env_seed()
{
    const char *v = std::getenv("FSJET_SEED");
    if (v == nullptr || *v == '\0') {
        return kDefaultSeed;
    }
    try {
        return parse_seed(v);
    } catch (const UsageError &) {
        throw UsageError("FSJET_SEED: invalid seed '" + std::string(v) + "'");
    }
}

std::string format_vector(const CVector &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + format_complex(v[i]);
    }
    return s;
}

// Unit direction from the command line: normalized when within 1e-6 of norm 1.
CVector direction_arg(const std::string &s, int dim)
{
    CVector e = s.empty() ? basis_vector(static_cast<std::size_t>(dim), 0) : parse_complex_list(s);
    if (static_cast<int>(e.size()) != dim) {
        throw UsageError("--e has " + std::to_string(e.size()) + " components, mapping dimension is " +
                         std::to_string(dim));
    }
    const double nv = norm(e);
    if (!(std::abs(nv - 1.0) <= 1e-6)) {
        throw UsageError("--e must have norm 1 (within 1e-6), got " + format_double(nv));
    }
    return e / nv;
}

MappingSpec load_spec(const std::string &path)
{
    try {
        return load_mapping_spec(path);
    } catch (const SpecError &e) {
        throw UsageError(path + ": " + e.what());
    }
}

nlohmann::ordered_json report_json(const Report &r)
{
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    j["max_residual"] = std::isfinite(r.max_residual) ? nlohmann::ordered_json(r.max_residual)
                                                      : nlohmann::ordered_json("inf");
    j["pass"] = r.pass;
    j["witnesses"] = r.witnesses;
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.details) {
        d[k] = v;
    }
    j["details"] = d;
    return j;
}

void report_text(const Report &r, std::ostream &out)
{
    out << "suite=" << r.suite << "\n"
        << "trials=" << r.trials << "\n"
        << "seed=" << r.seed << "\n"
        << "tolerance=" << format_double(r.tolerance) << "\n"
        << "max_residual=" << format_double(r.max_residual) << "\n"
        << "pass=" << (r.pass ? "true" : "false") << "\n";
    for (const auto &w : r.witnesses) {
        out << "witness=" << w << "\n";
    }
    for (const auto &[k, v] : r.details) {
        out << "detail." << k << "=" << v << "\n";
    }
}

int cmd_compute(const std::string &path, const std::string &e_arg, const std::string &l_arg, const std::string &m_arg,
                std::optional<int> variant, std::ostream &out)
{
    const MappingSpec spec = load_spec(path);
    if (spec.flow) {
        throw UsageError(path + ": spec carries a flow block; Psi is defined for normalized mappings");
    }
    const CVector e = direction_arg(e_arg, spec.jet.dim());
    cplx l;
    cplx m;
    try {
        l = parse_complex(l_arg);
        m = parse_complex(m_arg);
    } catch (const std::invalid_argument &ex) {
        throw UsageError(ex.what());
    }
    if (variant && (*variant < 1 || *variant > 4)) {
        throw UsageError("--variant must be 1, 2, 3 or 4");
    }
    const FSValue v = fs_mapping(spec.jet, FSContext{e, l, m});
    out << "dim=" << spec.jet.dim() << "\n"
        << "order=" << spec.jet.order() << "\n"
        << "e=" << format_vector(e) << "\n"
        << "lambda=" << format_complex(l) << "\n"
        << "mu=" << format_complex(m) << "\n"
        << "psi=" << format_vector(v.vector) << "\n"
        << "psi_norm=" << format_double(norm(v.vector)) << "\n"
        << "scalar_projection=" << format_complex(v.scalar_projection) << "\n";
    if (variant) {
        out << "variant=" << *variant << "\n"
            << "variant_mu=" << format_complex(scalar_variant_mu(*variant)) << "\n"
            << "psi_variant=" << format_complex(fs_scalar(spec.jet, e, l, *variant)) << "\n";
    }
    return kExitPass;
}

int cmd_verify(const std::string &suite, int trials, const std::string &seed_arg, std::optional<double> tol,
               const std::string &dims_arg, bool as_json, std::ostream &out)
{
    VerifyOptions opts;
    opts.trials = trials;
    opts.seed = seed_arg.empty() ? env_seed() : parse_seed(seed_arg);
    opts.tolerance = tol;
    opts.dims.clear();
    std::string_view rest = dims_arg;
    while (!rest.empty()) {
        const auto c = rest.find(',');
        const std::string_view tok = rest.substr(0, c);
        int d = 0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
        if (ec != std::errc() || p != tok.data() + tok.size() || d < 1 || d > 4) {
            throw UsageError("--dims expects a comma separated list of dimensions in 1..4");
        }
        opts.dims.push_back(d);
        rest = c == std::string_view::npos ? std::string_view{} : rest.substr(c + 1);
    }
    if (opts.dims.empty()) {
        throw UsageError("--dims must not be empty");
    }
    if (trials < 0) {
        throw UsageError("--trials must be nonnegative");
    }
    if (tol && !(*tol >= 0.0)) {
        throw UsageError("--tol must be nonnegative");
    }
    const auto &names = suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        std::string list;
        for (const auto &n : names) {
            list += n + ", ";
        }
        throw UsageError("unknown suite '" + suite + "'; valid suites: " + list + "all");
    }

    if (suite == "all") {
        const SuiteRun run = run_all(opts);
        if (as_json) {
            nlohmann::ordered_json j = report_json(run.summary);
            j["suites"] = nlohmann::ordered_json::array();
            for (const auto &r : run.suites) {
                j["suites"].push_back(report_json(r));
            }
            out << j.dump(2) << "\n";
        } else {
            for (const auto &r : run.suites) {
                report_text(r, out);
                out << "\n";
            }
            report_text(run.summary, out);
        }
        return run.summary.pass ? kExitPass : kExitFail;
    }
    const Report r = run_suite(suite, opts);
    if (as_json) {
        out << report_json(r).dump(2) << "\n";
    } else {
        report_text(r, out);
    }
    return r.pass ? kExitPass : kExitFail;
}

int cmd_transform(const std::string &path, const std::string &op, const std::string &e_arg, const std::string &out_path,
                  std::ostream &out)
{
    const MappingSpec spec = load_spec(path);
    if (spec.flow) {
        throw UsageError(path + ": spec carries a flow block; transforms need a normalized mapping");
    }
    const auto colon = op.find(':');
    const std::string name = op.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string{} : op.substr(colon + 1);
    auto need_arg = [&]() {
        if (arg.empty()) {
            throw UsageError("--op " + name + " needs an argument (" + name + ":...)");
        }
    };
    auto int_arg = [&]() {
        need_arg();
        int v = 0;
        const auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
        if (ec != std::errc() || p != arg.data() + arg.size()) {
            throw UsageError("--op " + name + ": expected an integer, got '" + arg + "'");
        }
        return v;
    };

    MappingSpec res{spec.jet, std::nullopt, std::nullopt};
    if (name == "root") {
        const int n = int_arg();
        if (!spec.onedim) {
            throw UsageError("--op root needs a spec with an \"onedim\" block");
        }
        if (n < 2) {
            throw UsageError("--op root: n must be at least 2");
        }
        const CVector e = direction_arg(e_arg, spec.jet.dim());
        try {
            res.jet = root_transform(*spec.onedim, n, e);
        } catch (const std::invalid_argument &ex) {
            throw UsageError(ex.what());
        }
    } else if (name == "invert") {
        if (!arg.empty()) {
            throw UsageError("--op invert takes no argument");
        }
        res.jet = invert(spec.jet);
    } else if (name == "iterate") {
        res.jet = iterate(spec.jet, int_arg());
    } else if (name == "conjugate") {
        need_arg();
        LinOp u;
        try {
            u = load_matrix(arg);
        } catch (const SpecError &ex) {
            throw UsageError(arg + ": " + ex.what());
        }
        if (static_cast<int>(u.dim()) != spec.jet.dim()) {
            throw UsageError("--op conjugate: matrix is " + std::to_string(u.dim()) + "x" + std::to_string(u.dim()) +
                             ", mapping dimension is " + std::to_string(spec.jet.dim()));
        }
        if (u.unitarity_residual() > 1e-12) {
            throw UsageError("--op conjugate: matrix is not unitary (max |U*U - I| = " +
                             format_double(u.unitarity_residual()) + ")");
        }
        res.jet = unitary_conjugate(spec.jet, u);
    } else if (name == "semigroup") {
        need_arg();
        double t = 0.0;
        const auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), t);
        if (ec != std::errc() || p != arg.data() + arg.size() || !(t >= 0.0) || !std::isfinite(t)) {
            throw UsageError("--op semigroup: t must be a nonnegative number");
        }
        if (spec.jet.order() < 3) {
            throw UsageError("--op semigroup: generator spec must have order >= 3");
        }
        const FlowJet u = semigroup_jet(spec.jet, t);
        res.jet = u.bracket;
        res.flow = FlowInfo{t, u.scale()};
    } else {
        throw UsageError("unknown --op '" + op + "'; expected root:n, invert, iterate:m, conjugate:path or semigroup:t");
    }
    if (spec.onedim) {
        res.onedim = detect_onedim(res.jet);
    }
    const std::string text = serialize_mapping_spec(res);
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!(f << text)) {
            throw UsageError("cannot write '" + out_path + "'");
        }
        out << "wrote=" << out_path << "\n";
    }
    return kExitPass;
}

int cmd_gallery(const std::string &name, int order, bool list, std::ostream &out, std::ostream &err)
{
    if (list) {
        for (const auto &n : gallery_names()) {
            out << n << "\t" << example_gallery(n).description << "\n";
        }
        return kExitPass;
    }
    if (name.empty()) {
        throw UsageError("gallery: NAME or --list required");
    }
    GalleryEntry g = [&]() {
        try {
            return example_gallery(name, order);
        } catch (const std::invalid_argument &ex) {
            std::string names;
            for (const auto &n : gallery_names()) {
                names += " " + n;
            }
            throw UsageError(std::string(ex.what()) + "; available:" + names);
        }
    }();
    out << serialize_mapping_spec(MappingSpec{g.jet, g.onedim, std::nullopt});
    if (!g.note.empty()) {
        err << "note: " << g.note << "\n";
    }
    return kExitPass;
}

} // namespace

cplx parse_complex(std::string_view s)
{
    const std::string_view whole = s;
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    if (s.empty()) {
        throw std::invalid_argument("empty complex number");
    }
    if (s.back() != 'i') {
        return {parse_real(s, whole), 0.0};
    }
    s.remove_suffix(1);
    // split before the sign that starts the imaginary part
    std::size_t split = 0;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string_view re = s.substr(0, split);
    std::string_view im = s.substr(split);
    double imv = 0.0;
    if (im.empty() || im == "+") {
        imv = 1.0;
    } else if (im == "-") {
        imv = -1.0;
    } else {
        imv = parse_real(im, whole);
    }
    return {re.empty() ? 0.0 : parse_real(re, whole), imv};
}

CVector parse_complex_list(std::string_view s)
{
    std::vector<cplx> v;
    for (;;) {
        const auto c = s.find(',');
        v.push_back(parse_complex(s.substr(0, c)));
        if (c == std::string_view::npos) {
            break;
        }
        s.remove_prefix(c + 1);
    }
    return CVector(std::move(v));
}

std::string format_complex(cplx z)
{
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Fekete-Szego mappings of truncated holomorphic jets", "fsjet"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string e_arg;
    std::string lambda_arg = "0";
    std::string mu_arg = "0";
    std::optional<int> variant;
    auto *compute = app.add_subcommand("compute", "evaluate Psi_e(f, lambda, mu) for a spec file");
    compute->add_option("spec", spec_path, "mapping spec file")->required();
    compute->add_option("--e", e_arg, "unit direction, comma separated complex components (default e_1)");
    compute->add_option("--lambda", lambda_arg, "complex lambda, a+bi")->capture_default_str();
    compute->add_option("--mu", mu_arg, "complex mu, a+bi")->capture_default_str();
    compute->add_option("--variant", variant, "scalar variant 1..4 (mu = 0, 1, 2/3, 2)");

    std::string suite;
    int trials = 100;
    std::string seed_arg;
    std::optional<double> tol;
    std::string dims_arg = "2,3";
    bool as_json = false;
    auto *verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "suite name or all")->required();
    verify->add_option("--trials", trials, "number of trials")->capture_default_str();
    verify->add_option("--seed", seed_arg, "master seed (default $FSJET_SEED or 42)");
    verify->add_option("--tol", tol, "override the suite tolerance");
    verify->add_option("--dims", dims_arg, "comma separated dimensions")->capture_default_str();
    verify->add_flag("--json", as_json, "print the report as JSON");

    std::string op;
    std::string out_path;
    auto *transform = app.add_subcommand("transform", "apply a transform and print the resulting spec");
    transform->add_option("spec", spec_path, "mapping spec file")->required();
    transform->add_option("--op", op, "root:n | invert | iterate:m | conjugate:matrix_path | semigroup:t")->required();
    transform->add_option("--e", e_arg, "direction for root:n (default e_1)");
    transform->add_option("--out", out_path, "write the spec here instead of stdout");

    std::string gallery_name;
    int order = kDefaultOrder;
    bool list = false;
    auto *gallery = app.add_subcommand("gallery", "print the spec of a worked example");
    gallery->add_option("name", gallery_name, "example name");
    gallery->add_option("--order", order, "jet order")->capture_default_str();
    gallery->add_flag("--list", list, "list the examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (compute->parsed()) {
            return cmd_compute(spec_path, e_arg, lambda_arg, mu_arg, variant, out);
        }
        if (verify->parsed()) {
            return cmd_verify(suite, trials, seed_arg, tol, dims_arg, as_json, out);
        }
        if (transform->parsed()) {
            return cmd_transform(spec_path, op, e_arg, out_path, out);
        }
        if (gallery->parsed()) {
            return cmd_gallery(gallery_name, order, list, out, err);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace fsjet
