#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace psfig {

enum ExitStatus : int {
    kExitOk = 0,
    kExitInput = 1,
    kExitResolve = 2,
    kExitOutput = 3,
};

struct CliConfig {
    std::filesystem::path input_path;
    /// Defaults to the input's directory.
    std::optional<std::filesystem::path> out_dir;
    bool svg = true;
    bool json = false;
    double tension = 0.0;
    int precision = 4;
    double margin_units = 0.0;
    bool strict = true;
    bool dump_ast = false;
};

/// parse -> resolve -> spline -> emit. Writes `<stem>-<k>.svg` per picture
/// and/or `<stem>.resolved.json`, all or nothing.
int run(const CliConfig &config, std::ostream &out, std::ostream &err);

} // namespace psfig
