#pragma once

#include <fsjet/linalg.hpp>

#include <ostream>
#include <string>
#include <string_view>

namespace fsjet
{

// Exit codes of the command line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// "a+bi" with either part optional: "1", "-2.5i", "i", "0.5-i", "1e-3+2e-2i".
// Throws std::invalid_argument on anything else.
cplx parse_complex(std::string_view s);
// Comma separated list of complex numbers.
CVector parse_complex_list(std::string_view s);
// 17 significant digits, "re+imi".
std::string format_complex(cplx z);

// compute | verify | transform | gallery; see README for the flags.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace fsjet
