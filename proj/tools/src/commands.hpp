#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rdg::cli {

inline constexpr const char* kToolName = "rdg";
inline constexpr const char* kToolVersion = "0.1.0";

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    int workers = 1;
    bool quiet = false;
};

int cmd_generate(const std::string& config_path, const std::string& format,
                 const GlobalOptions& global);
int cmd_analyze(const std::string& edges_path, const std::string& types_path,
                const std::vector<std::string>& metrics, const GlobalOptions& global);
int cmd_fixed_point(const std::string& config_path, const std::string& coupling,
                    const GlobalOptions& global);
int cmd_experiment(const std::string& config_path, const GlobalOptions& global);

/// Full CLI entry point; args exclude the program name. Returns the process
/// exit code (0 ok, 2 config/parse, 3 generation, 4 non-convergence).
int run_cli(const std::vector<std::string>& args);

} // namespace rdg::cli
