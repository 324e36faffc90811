#ifndef HPQ_CLI_HPP
#define HPQ_CLI_HPP

#include "hpq/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hpq {

enum class Command { Verify, Identities, Classify, Scan, Tension, Energy };
enum class OutputFormat { Json, Csv };

std::string to_string(Command c);
Command parse_command(const std::string &text);

/// Exit codes of the front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitResidual = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitDomain = 3;

/// "a,b,c" or "start:stop:step" (stop included when hit within rounding).
std::vector<double> parse_grid(const std::string &text);

/// Field descriptors: zero, hopf[:k], rotation[:ax,ay,az], conformal:a0,...,
/// quadratic:d0,...[@k] (diagonal B), profiled:c,a (F = c t^a about the z
/// axis), frame:i, parallel (d/dt on s2xr).
VectorFieldSpec parse_field(const std::string &text, const Manifold &model);

struct RunConfig {
    Command command = Command::Verify;
    std::string model = "sphere:3";
    std::string field = "hopf:1";
    double p = 2.0;
    double q = 1.0;
    int samples = 200;
    std::uint64_t seed = 42;
    double tolerance = 1e-8;
    OutputFormat format = OutputFormat::Json;
    std::optional<double> fd_step;
    FrameStrategy frame = FrameStrategy::Canonical;
    std::string equation = "section";
    int n = 5;                ///< classify / identities
    int matrices = 20;        ///< identities: random symmetric B per run
    std::vector<double> p_grid;
    std::vector<double> q_grid;
    std::vector<double> scale_grid;
    bool per_point = false;
    std::optional<std::string> out;

    /// Throws InvalidInput on a config that cannot run.
    void validate() const;
    OperatorConfig operator_config() const;
};

Json to_json(const RunConfig &config);

/// Applies the keys of a JSON object (same names as the long flags, with
/// underscores) on top of `base`.
RunConfig config_from_json(const Json &j, RunConfig base = {});

struct RunResult {
    int exit_code = kExitPass;
    std::string output;      ///< the report
    std::string diagnostics; ///< for stderr
};

/// Executes one command. Never throws: invalid input maps to exit 2 and
/// domain errors to exit 3.
RunResult run(const RunConfig &config);

/// Full front end: parses argv (optionally layered over --config and the
/// HPQ_SEED environment variable), runs, writes the report to `out` or to
/// --out, and returns the exit code.
int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace hpq

#endif // HPQ_CLI_HPP
