#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcoreset {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Entry point of the `pcoreset` command line tool. Subcommands: build,
/// build-oneshot, eval, oracle, synth, bench, advise-m.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcoreset
