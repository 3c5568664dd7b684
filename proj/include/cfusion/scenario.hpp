#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfusion/error.hpp"
#include "cfusion/serialize.hpp"

namespace cfusion::scenario {

/// Error raised while loading a scenario, with the offending node's position.
class LocatedError : public Error {
public:
    LocatedError(ErrorCode code, std::string path, std::size_t line, std::size_t column, const std::string &message);
    [[nodiscard]] const std::string &path() const noexcept { return path_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    [[nodiscard]] const std::string &detail() const noexcept { return detail_; }

private:
    std::string path_;
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

inline const std::vector<std::string> kCommands = {"check-frame", "bounds",    "reconstruct", "tightness",   "multiplier",
                                                   "cone",        "transport", "perturb",     "verify-oracle"};

struct RunOptions {
    std::optional<std::string> only;
    std::optional<std::uint64_t> seed;
};

struct RunResult {
    io::json report;
    int exit_code = 0;  ///< 0 all commands ok, 1 a command failed, 2 the scenario did not load
};

RunResult run_text(const std::string &text, const RunOptions &options = {});
RunResult run_file(const std::string &path, const RunOptions &options = {});

/// Bundled scenarios as (file name, YAML text).
std::vector<std::pair<std::string, std::string>> bundled_examples();

} // namespace cfusion::scenario
