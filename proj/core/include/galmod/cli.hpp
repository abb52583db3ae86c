#ifndef GALMOD_CLI_HPP
#define GALMOD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace galmod::cli {

// The command line driver.  Subcommands: info, h1, coflabby, coflasque,
// invertible, permutation, motive, plus the presets dp5 and dp6 which may
// be followed by one of those verbs (default: a summary of the whole
// construction).  Flags: --input PATH, --preset dp5|dp6,
// --format text|json, --element-cap N, --iso-bound B, --assume-zero-cycle,
// --subgroup NAMES.
//
// Exit codes: 0 success, 1 invalid input, 2 element cap exceeded,
// 3 internal invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace galmod::cli

#endif  // GALMOD_CLI_HPP
