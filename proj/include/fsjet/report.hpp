#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fsjet
{

// Outcome of a sampled or property-style verification.
// Invariant: pass == (max_residual <= tolerance).
struct Report {
    std::string suite;
    int trials = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double max_residual = 0.0;
    bool pass = true;
    std::vector<std::string> witnesses;
    std::vector<std::pair<std::string, std::string>> details;

    void finalize() { pass = max_residual <= tolerance; }
    void record(double residual, std::string witness = {});
};

std::string format_double(double x);

} // namespace fsjet
