#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epi::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
/// The inequality verdict is contrary to the expected direction
/// (epi-check: violated; audit: proven inequality violated, or an expected
/// counterexample family failed to violate).
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitInputError = 2;
/// A numerical invariant failed (a bug, not bad input).
inline constexpr int kExitInternal = 3;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epi::cli
