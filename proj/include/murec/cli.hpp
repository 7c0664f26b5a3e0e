#ifndef MUREC_CLI_HPP
#define MUREC_CLI_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "murec/diagnostics.hpp"
#include "murec/solver.hpp"

// Restoration front end: PNG ingestion, solve orchestration, restored image
// and JSON report emission. Exit codes: 0 success, 2 validation error,
// 3 I/O error, 4 solver failure; failures also print a machine-readable
// {"error": ...} object to stdout.

namespace murec {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitSolver = 4;

struct RunConfig {
  DensityKind density_kind = DensityKind::MuFamily;
  double mu = 1.5;
  DataTermKind data_kind = DataTermKind::Quadratic;
  double lambda = 10.0;
  double beta = 1.0;
  double spacing = 1.0;
  SolverConfig solver;

  std::string input_path;
  std::string mask_path;    // empty: D is empty (pure denoising)
  std::string output_path;
  std::string report_path;  // empty: derived as <output>.report.json
  bool diagnostics = false;

  void validate() const;  // throws ConfigError
  Density make_density() const;
  DataTermProfile make_data_term() const;
  std::string resolved_report_path() const;
};

struct IngestResult {
  ImageField image;  // values scaled to [0,1]
  Mask mask;         // pixel in D iff the mask image's first channel is nonzero
  int bit_depth;     // 8 or 16, preserved for output quantization
};

// Throws IoError for unreadable/undecodable files, ConfigError for dimension
// mismatches and for a mask covering every pixel.
IngestResult ingest(const std::string& input_path, const std::string& mask_path = "");

// Clamp to [0,1] and quantize to the given bit depth.
void write_image(const std::string& path, const ImageField& u, int bit_depth);

// Full restoration run. Returns the exit code; on failure prints an error
// object to stdout.
int run_restore(const RunConfig& cfg);

}  // namespace murec

#endif
