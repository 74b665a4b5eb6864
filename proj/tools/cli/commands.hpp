#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "nosig/signalling.hpp"

namespace nosig::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitMismatch = 1, ///< a reproduced value missed its expected value
    kExitConfig = 2,
    kExitContract = 3,
};

struct GlobalOptions {
    double tolerance = kSignalThreshold; ///< signalling verdict threshold
};

int cmd_paper_examples(std::ostream &out, std::ostream &err, const GlobalOptions &opts, bool as_json);
int cmd_run(const std::string &config_path, const std::optional<std::string> &out_path, std::ostream &out,
            std::ostream &err, const GlobalOptions &opts);
int cmd_classify(const std::string &config_path, std::ostream &out, std::ostream &err, const GlobalOptions &opts);
int cmd_scan(const std::string &config_path, int pairs, std::uint64_t seed, std::ostream &out, std::ostream &err,
             const GlobalOptions &opts);

} // namespace nosig::cli
