#include <fsjet/spec_io.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fsjet
{

using nlohmann::json;
using nlohmann::ordered_json;

SpecError::SpecError(const std::string &msg, int line, int column, std::string path)
    : std::runtime_error(msg), line_(line), column_(column), path_(std::move(path))
{
}

namespace
{

[[noreturn]] void fail(const std::string &path, const std::string &what)
{
    throw SpecError(path + ": " + what, 0, 0, path);
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        // e.byte is the 1-based offset of the last byte read.
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        int line = 1;
        int col = 1;
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (const auto p = msg.find("syntax error"); p != std::string::npos) {
            msg = msg.substr(p);
        }
        throw SpecError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg, line, col);
    } catch (const json::exception &e) {
        // number overflow and the like carry no position
        throw SpecError(e.what());
    }
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SpecError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int get_int(const json &j, const std::string &path)
{
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return j.get<int>();
}

const json &member(const json &obj, const char *key, const std::string &path)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path + "." + key, "missing");
    }
    return *it;
}

void check_keys(const json &obj, std::initializer_list<const char *> allowed, const std::string &path)
{
    if (!obj.is_object()) {
        fail(path, "expected an object");
    }
    for (const auto &[k, v] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return k == a; })) {
            fail(path + "." + k, "unknown key");
        }
    }
}

cplx get_complex(const json &j, const std::string &path)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(path, "expected a [re, im] pair of numbers");
    }
    const cplx z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        fail(path, "non-finite value");
    }
    return z;
}

// Reads the "polys" array into homogeneous parts of codomain m; `scalar`
// selects the single [re, im] value form.
std::vector<HomPoly> read_polys(const json &arr, int n, int m, int lo, int hi, bool scalar, const std::string &path)
{
    if (!arr.is_array()) {
        fail(path, "expected an array");
    }
    std::vector<HomPoly> out;
    std::set<int> seen;
    for (std::size_t pi = 0; pi < arr.size(); ++pi) {
        const std::string pp = path + "[" + std::to_string(pi) + "]";
        const json &pj = arr[pi];
        check_keys(pj, {"degree", "entries"}, pp);
        const int k = get_int(member(pj, "degree", pp), pp + ".degree");
        if (k < lo || k > hi) {
            fail(pp + ".degree", "degree " + std::to_string(k) + " outside [" + std::to_string(lo) + ", " +
                                     std::to_string(hi) + "]");
        }
        if (!seen.insert(k).second) {
            fail(pp + ".degree", "duplicate degree " + std::to_string(k));
        }
        HomPoly p(k, n, m);
        const json &entries = member(pj, "entries", pp);
        if (!entries.is_array()) {
            fail(pp + ".entries", "expected an array");
        }
        std::set<HomPoly::Key> keys;
        for (std::size_t ei = 0; ei < entries.size(); ++ei) {
            const std::string ep = pp + ".entries[" + std::to_string(ei) + "]";
            const json &ej = entries[ei];
            check_keys(ej, {"index", "value"}, ep);
            const json &idx = member(ej, "index", ep);
            if (!idx.is_array() || static_cast<int>(idx.size()) != k) {
                fail(ep + ".index", "expected " + std::to_string(k) + " indices");
            }
            HomPoly::Key key;
            for (std::size_t q = 0; q < idx.size(); ++q) {
                const int i = get_int(idx[q], ep + ".index[" + std::to_string(q) + "]");
                if (i < 1 || i > n) {
                    fail(ep + ".index", "index " + std::to_string(i) + " outside 1.." + std::to_string(n));
                }
                if (!key.empty() && i - 1 < key.back()) {
                    fail(ep + ".index", "indices must be sorted ascending");
                }
                key.push_back(i - 1);
            }
            if (!keys.insert(key).second) {
                fail(ep + ".index", "duplicate index");
            }
            const json &val = member(ej, "value", ep);
            CVector v(static_cast<std::size_t>(m));
            if (scalar) {
                v[0] = get_complex(val, ep + ".value");
            } else {
                if (!val.is_array() || static_cast<int>(val.size()) != m) {
                    fail(ep + ".value", "expected " + std::to_string(m) + " [re, im] pairs");
                }
                for (std::size_t c = 0; c < val.size(); ++c) {
                    v[c] = get_complex(val[c], ep + ".value[" + std::to_string(c) + "]");
                }
            }
            p.set_coeff(key, v);
        }
        out.push_back(std::move(p));
    }
    return out;
}

ordered_json complex_json(cplx z)
{
    // adding 0.0 folds -0 into +0 so equal jets serialize identically
    return ordered_json::array({z.real() + 0.0, z.imag() + 0.0});
}

ordered_json write_polys(const std::vector<const HomPoly *> &polys, bool scalar)
{
    ordered_json arr = ordered_json::array();
    for (const HomPoly *p : polys) {
        if (p->is_zero()) {
            continue;
        }
        ordered_json entries = ordered_json::array();
        for (const auto &[key, val] : p->coeffs()) {
            ordered_json idx = ordered_json::array();
            for (int i : key) {
                idx.push_back(i + 1);
            }
            ordered_json value;
            if (scalar) {
                value = complex_json(val[0]);
            } else {
                value = ordered_json::array();
                for (cplx z : val) {
                    value.push_back(complex_json(z));
                }
            }
            entries.push_back(ordered_json{{"index", idx}, {"value", value}});
        }
        arr.push_back(ordered_json{{"degree", p->degree()}, {"entries", entries}});
    }
    return arr;
}

} // namespace

MappingSpec parse_mapping_spec(std::string_view text)
{
    const json j = parse_json(text);
    check_keys(j, {"dim", "order", "polys", "onedim", "flow"}, "$");
    const int n = get_int(member(j, "dim", "$"), "$.dim");
    if (n < 1) {
        fail("$.dim", "must be positive");
    }
    const int order = get_int(member(j, "order", "$"), "$.order");
    if (order < 1 || order > kMaxOrder) {
        fail("$.order", "must lie in 1.." + std::to_string(kMaxOrder));
    }

    std::optional<OneDimJet> onedim;
    if (const auto it = j.find("onedim"); it != j.end()) {
        check_keys(*it, {"order", "polys"}, "$.onedim");
        const int k = get_int(member(*it, "order", "$.onedim"), "$.onedim.order");
        if (k != order) {
            fail("$.onedim.order", "must equal the mapping order");
        }
        onedim = OneDimJet(n, order, read_polys(member(*it, "polys", "$.onedim"), n, 1, 1, order - 1, true,
                                                "$.onedim.polys"));
    }

    MappingJet jet(n, order);
    if (const auto it = j.find("polys"); it != j.end()) {
        for (auto &p : read_polys(*it, n, n, 2, order, false, "$.polys")) {
            jet.set_poly(std::move(p));
        }
        if (onedim && !onedim->to_mapping().approx_equal(jet, {1e-12, 1e-12})) {
            fail("$.onedim", "factor series does not reproduce \"polys\"");
        }
    } else if (onedim) {
        jet = onedim->to_mapping();
    } else {
        fail("$.polys", "missing (neither \"polys\" nor \"onedim\" given)");
    }

    std::optional<FlowInfo> flow;
    if (const auto it = j.find("flow"); it != j.end()) {
        check_keys(*it, {"t", "scale"}, "$.flow");
        const json &t = member(*it, "t", "$.flow");
        const json &s = member(*it, "scale", "$.flow");
        if (!t.is_number() || !std::isfinite(t.get<double>()) || t.get<double>() < 0.0) {
            fail("$.flow.t", "expected a nonnegative number");
        }
        if (!s.is_number() || std::abs(s.get<double>() - std::exp(-t.get<double>())) > 1e-12) {
            fail("$.flow.scale", "expected exp(-t)");
        }
        flow = FlowInfo{t.get<double>(), s.get<double>()};
    }
    return MappingSpec{std::move(jet), std::move(onedim), flow};
}

MappingSpec load_mapping_spec(const std::string &path)
{
    return parse_mapping_spec(read_file(path));
}

std::string serialize_mapping_spec(const MappingSpec &spec)
{
    ordered_json j;
    j["dim"] = spec.jet.dim();
    j["order"] = spec.jet.order();
    std::vector<const HomPoly *> ps;
    for (int k = 2; k <= spec.jet.order(); ++k) {
        ps.push_back(&spec.jet.poly(k));
    }
    j["polys"] = write_polys(ps, false);
    if (spec.onedim) {
        std::vector<const HomPoly *> qs;
        for (int k = 1; k < spec.onedim->order(); ++k) {
            qs.push_back(&spec.onedim->factor_poly(k));
        }
        j["onedim"] = ordered_json{{"order", spec.onedim->order()}, {"polys", write_polys(qs, true)}};
    }
    if (spec.flow) {
        j["flow"] = ordered_json{{"t", spec.flow->t}, {"scale", spec.flow->scale}};
    }
    return j.dump(2) + "\n";
}

LinOp parse_matrix(std::string_view text)
{
    const json j = parse_json(text);
    check_keys(j, {"matrix"}, "$");
    const json &rows = member(j, "matrix", "$");
    if (!rows.is_array() || rows.empty()) {
        fail("$.matrix", "expected a nonempty array of rows");
    }
    const std::size_t n = rows.size();
    LinOp m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string rp = "$.matrix[" + std::to_string(i) + "]";
        if (!rows[i].is_array() || rows[i].size() != n) {
            fail(rp, "expected " + std::to_string(n) + " entries (square matrix)");
        }
        for (std::size_t c = 0; c < n; ++c) {
            m(i, c) = get_complex(rows[i][c], rp + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

LinOp load_matrix(const std::string &path)
{
    return parse_matrix(read_file(path));
}

std::string serialize_matrix(const LinOp &m)
{
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            row.push_back(complex_json(m(i, c)));
        }
        rows.push_back(row);
    }
    return ordered_json{{"matrix", rows}}.dump(2) + "\n";
}

} // namespace fsjet
