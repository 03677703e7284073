#pragma once

#include <fsjet/report.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fsjet
{

struct VerifyOptions {
    int trials = 100;
    std::uint64_t seed = 42;
    std::optional<double> tolerance; // suite default when empty
    std::vector<int> dims{2, 3};
};

// polarization, compose, inverse, iterate, unitary, root, error-bound,
// semigroup, duality, bounds (and "all" for run_suite).
const std::vector<std::string> &suite_names();
double default_tolerance(const std::string &suite);

// Trial i draws from derive_seed(seed, i) and works in dims[i % dims.size()],
// so reports depend only on the options. Residuals are scaled as documented
// per suite in the report details. Throws std::invalid_argument for unknown
// suites or invalid options.
Report run_suite(const std::string &suite, const VerifyOptions &opts);

// Every suite in order plus a summary whose residual is the largest ratio
// max_residual / tolerance (summary tolerance 1).
struct SuiteRun {
    Report summary;
    std::vector<Report> suites;
};
SuiteRun run_all(const VerifyOptions &opts);

} // namespace fsjet
