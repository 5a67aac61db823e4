#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "urel/eos.hpp"
#include "urel/errors.hpp"
#include "urel/glimm.hpp"
#include "urel/interactions.hpp"
#include "urel/states.hpp"

namespace urel::cli {

class ConfigError : public Error {
public:
    using Error::Error;
};

enum ExitCode : int { kOk = 0, kConfigError = 2, kViolation = 3, kNumericalFailure = 4 };

enum class Command { riemann, glimm, curves, interactions };

Command parse_command(const std::string& name);
const char* command_name(Command c);

struct SamplingConfig {
    SamplingKind kind = SamplingKind::van_der_corput;
    std::uint64_t seed = 1;
    unsigned k1 = 5, k2 = 3;

    SamplingSequence make() const;
};

struct OutputConfig {
    std::size_t stride = 0;  // profile every `stride` levels (0: first and last)
    bool profiles = true;
};

struct CurvesConfig {
    PrimitiveState base;
    double sigma_max = 3.0;
    std::size_t points = 61;
};

struct SweepBlock {
    SweepConfig sweep;
    bool samples_csv = false;
    bool curated = true;
};

struct RunConfig {
    Command command = Command::riemann;
    Eos eos = Eos::polytropic(4.0 / 3.0);
    std::optional<Profile> profile;
    PrimitiveState left, right;  // riemann problems
    double x0 = 0.0;
    GridConfig grid;
    SamplingConfig sampling;
    OutputConfig output;
    CurvesConfig curves;
    SweepBlock sweep;
};

// Full validation; throws ConfigError naming the offending key.
RunConfig parse_config(const nlohmann::json& doc, Command command, std::optional<std::uint64_t> seed = std::nullopt);
RunConfig load_config(const std::filesystem::path& path, Command command,
                      std::optional<std::uint64_t> seed = std::nullopt);

// Writes the command's outputs under `out`; returns kOk or kViolation.
int execute(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);

// Config loading, execution and error-to-exit-code mapping in one call.
int run_command(Command command, const std::filesystem::path& config, const std::filesystem::path& out,
                std::optional<std::uint64_t> seed, std::ostream& log);

// 17 significant digits, round-trip exact.
std::string format_number(double x);
// JSON text with every floating-point value printed by format_number.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace urel::cli
