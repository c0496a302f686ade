// Batch orchestration: resolve a config, propagate with the requested method
// (direct path integral, legacy transfer-tensor route, pure-Lindblad
// reference, or brute force), and emit a deterministic CSV time series plus a
// JSON run manifest.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pild/config.hpp"
#include "pild/models.hpp"
#include "pild/transfer_tensor.hpp"
#include "pild/types.hpp"

namespace pild {

struct RunOptions {
  std::filesystem::path output_dir = ".";
  int threads = 0;  // 0 = hardware concurrency
  bool validate_only = false;
};

struct RunDiagnostics {
  double trace_drift_max = 0.0;
  double hermiticity_max = 0.0;
  double min_eigenvalue = 0.0;
  double im_trace_max = 0.0;
  double kmax_sensitivity = -1.0;  // < 0 when not requested
  double wall_ms = 0.0;
};

struct RunResult {
  std::vector<DensityMatrix> states;  // step 0 .. n_steps
  ObservableTable table;
  RunDiagnostics diagnostics;
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
};

RunResult run(const SimConfig& cfg, const RunOptions& opt = {});

/// Computes the transfer tensors of a time-independent configuration and
/// writes them (with dt and metadata) to a reloadable JSON archive, so later
/// runs with different jump operators can skip the bath simulation.
std::filesystem::path export_transfer_tensors(const SimConfig& cfg, const RunOptions& opt = {});

TransferTensorSet load_transfer_tensors(const std::filesystem::path& path, int expected_dim,
                                        double expected_dt);

}  // namespace pild
