#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropica::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;

// Subcommands: validate, eigen, simulate, sweep, verify.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Numbers from a JSON array or whitespace/comma separated text.
std::vector<double> read_vector_file(const std::string& path);

// --tol when given, else TROPICA_TOL, else the library default.
double resolve_tolerance(const double* flag_value);

}  // namespace tropica::cli
