// Batch front-end.  Exit codes: 0 success, 2 validation failure, 3 resource
// refusal, 4 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>

#include "pild/run.hpp"

namespace {

int dispatch(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const pild::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const pild::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const pild::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-quantum-system simulator: influence-functional path integrals "
               "combined with Lindblad jump operators"};
  app.require_subcommand(1);

  std::string config_file;
  std::string output_dir = ".";
  int threads = 0;
  bool validate_only = false;

  auto* run_cmd = app.add_subcommand("run", "Run the simulation described by a config file");
  run_cmd->add_option("config", config_file, "JSON config file")->required();
  run_cmd->add_option("--output", output_dir, "Directory for CSV and manifest outputs");
  run_cmd->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  run_cmd->add_flag("--validate-only", validate_only, "Validate the config and exit");

  auto* export_cmd = app.add_subcommand(
      "export-tensors", "Compute and archive transfer tensors for a time-independent config");
  export_cmd->add_option("config", config_file, "JSON config file")->required();
  export_cmd->add_option("--output", output_dir, "Directory for the tensor archive");
  export_cmd->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  CLI11_PARSE(app, argc, argv);

  pild::RunOptions opt;
  opt.output_dir = output_dir;
  opt.threads = threads;
  opt.validate_only = validate_only;

  if (run_cmd->parsed()) {
    return dispatch([&] {
      const auto cfg = pild::SimConfig::from_json_file(config_file);
      const auto result = pild::run(cfg, opt);
      if (validate_only) {
        std::cout << "config ok\n";
        return;
      }
      std::cout << "wrote " << result.csv_path.string() << "\n"
                << "wrote " << result.manifest_path.string() << "\n";
    });
  }
  return dispatch([&] {
    const auto cfg = pild::SimConfig::from_json_file(config_file);
    const auto path = pild::export_transfer_tensors(cfg, opt);
    std::cout << "wrote " << path.string() << "\n";
  });
}
