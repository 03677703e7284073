#include <fsjet/report.hpp>

#include <cmath>
#include <cstdio>

namespace fsjet
{

void Report::record(double residual, std::string witness)
{
    if (std::isnan(residual)) {
        residual = INFINITY;
    }
    if (residual > max_residual) {
        max_residual = residual;
    }
    if (residual > tolerance && !witness.empty() && witnesses.size() < 8) {
        witnesses.push_back(std::move(witness));
    }
}

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace fsjet
