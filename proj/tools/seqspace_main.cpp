#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seqspace/job.hpp"
#include "seqspace/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact computations in weighted-mean difference sequence spaces"};
  app.set_version_flag("--version", seqspace::kToolVersion);
  app.require_subcommand(1);

  std::string jobfile;
  std::string out_path;
  std::int64_t horizon = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;

  CLI::App* run = app.add_subcommand("run", "run a job file, print a JSON report");
  run->add_option("jobfile", jobfile, "job description (JSON)")->required();
  CLI::Option* run_horizon =
      run->add_option("--horizon", horizon, "default probe horizon");
  CLI::Option* run_tol = run->add_option("--tol", tol, "default probe tolerance");
  CLI::Option* run_seed = run->add_option("--seed", seed, "seed echoed in the report");
  CLI::Option* run_out =
      run->add_option("--out", out_path, "also write the report to this file");

  CLI::App* verify =
      app.add_subcommand("verify", "run the self-check oracle battery");
  CLI::Option* verify_seed =
      verify->add_option("--seed", seed, "seed for the drawn inputs");
  CLI::Option* verify_out =
      verify->add_option("--out", out_path, "also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1
  }

  seqspace::RunOptions options;
  seqspace::RunResult result;
  if (run->parsed()) {
    if (run_horizon->count() > 0) options.horizon = horizon;
    if (run_tol->count() > 0) options.tol = tol;
    if (run_seed->count() > 0) options.seed = seed;
    if (run_out->count() > 0) options.out_path = out_path;
    result = seqspace::run_job_file(jobfile, options);
  } else {
    if (verify_seed->count() > 0) options.seed = seed;
    if (verify_out->count() > 0) options.out_path = out_path;
    result = seqspace::run_verify(options);
  }
  std::cout << result.report_json;
  return result.exit_code;
}
