#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qapbound {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInvariant = 2;

/// Command-line front end. args excludes the program name. Subcommands:
///   solve  --method bca|hung|hung-ri --input PATH [--qaplib] [--augment]
///          [--time-limit S] [--max-iters N] [--tolerance T] [--output json|csv]
///          [--trajectory] [--dummy-cost C] [--epsilon E] [--no-early-stop]
///          [--backward-pass]
///   lap    --input PATH [--no-ri]
///   verify --input PATH [--qaplib] [--augment] [--dummy-cost C]
///   batch  --manifest PATH [--workers N] [--output text|json|csv]
/// Returns 0 on success, 1 on input errors, 2 on invariant violations.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qapbound
