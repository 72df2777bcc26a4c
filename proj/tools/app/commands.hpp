#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "fracbvp/green_kernel.hpp"
#include "fracbvp/solver.hpp"

namespace fracbvp::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kCertificateFailure = 2, kNoConvergence = 3 };

struct CommandOptions {
  Overrides overrides;
  bool json = false;
};

/// Everything a report needs to be re-run bit-identically plus the results.
struct ReportBundle {
  std::vector<std::string> provenance;
  double mu = 0.0;
  double beta = 0.0;
  double beta_bound = 0.0;
  std::optional<Certificate> certificate;
  std::optional<KernelCheck> kernel_check;
  std::optional<SolveReport> solve;
};

std::string render_text(const ReportBundle& bundle);
std::string render_json(const ReportBundle& bundle);

/// Effective settings, config echo, library version, grid description and sample seed.
std::vector<std::string> provenance(const Config& config);

/// Validates the parameters and rejects mu = 0 with the message "μ≠0 required".
GreenKernel make_kernel(const ProblemSpec& spec);

int cmd_check(const std::filesystem::path& config, const CommandOptions& options, std::ostream& out,
              std::ostream& err);
/// Writes `output` (t,u) and a sidecar `output`.report.txt, or .report.json with --json.
int cmd_solve(const std::filesystem::path& config, const std::filesystem::path& output,
              const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_green(const std::filesystem::path& config, const std::filesystem::path& output, std::size_t resolution,
              const CommandOptions& options, std::ostream& out, std::ostream& err);

struct ReferenceConstant {
  std::string example;
  std::string quantity;
  double computed = 0.0;
  double printed = 0.0;
  double abs_diff() const;
};

inline constexpr double kReferenceTolerance = 1e-4;

/// The six printed constants of the two worked examples, recomputed.
std::vector<ReferenceConstant> reference_constants();
int cmd_verify_paper(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace fracbvp::cli
