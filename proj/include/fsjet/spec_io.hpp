#pragma once

#include <fsjet/jet.hpp>
#include <fsjet/linalg.hpp>
#include <fsjet/transforms.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fsjet
{

// Malformed spec or matrix file. Syntax errors carry the 1-based line and
// column; schema errors carry the JSON path of the offending value instead.
class SpecError : public std::runtime_error
{
public:
    SpecError(const std::string &msg, int line = 0, int column = 0, std::string path = {});

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string &path() const noexcept { return path_; }

private:
    int line_;
    int column_;
    std::string path_;
};

struct FlowInfo {
    double t = 0.0;
    double scale = 1.0;
};

// In memory form of a mapping spec file:
//
//   {"dim": n, "order": K,
//    "polys": [{"degree": k,
//               "entries": [{"index": [i_1, ..., i_k], "value": [[re, im], ...]}]}],
//    "onedim": {"order": K, "polys": [{"degree": k, "entries": [{"index": [...], "value": [re, im]}]}]},
//    "flow": {"t": t, "scale": exp(-t)}}
//
// Indices are 1-based and sorted ascending; "onedim" gives the factor s of
// f(x) = s(x) x as p_1 .. p_{K-1}; "flow" marks a semigroup element
// exp(-t) f. When "polys" is absent the jet is derived from "onedim"; when
// both are present they must agree.
struct MappingSpec {
    MappingJet jet;
    std::optional<OneDimJet> onedim;
    std::optional<FlowInfo> flow;
};

MappingSpec parse_mapping_spec(std::string_view text);
MappingSpec load_mapping_spec(const std::string &path);
// Canonical form: fixed key order, nonzero degrees only, entries by index.
std::string serialize_mapping_spec(const MappingSpec &spec);

// {"matrix": [[[re, im], ...], ...]}, square.
LinOp parse_matrix(std::string_view text);
LinOp load_matrix(const std::string &path);
std::string serialize_matrix(const LinOp &m);

} // namespace fsjet
