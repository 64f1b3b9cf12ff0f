// Command-line driver for the report commands.
//
// Usage: modlp <command> --config <path> [--out <dir>] [--seed <u64>]
//                        [--threads <n>]
//
// Each subcommand loads a JSON run description whose "command" field
// must name the invoked subcommand, executes the run, and prints the
// artifact paths it wrote.  The acceptance subcommand additionally
// prints one verdict line per criterion.
//
// Exit codes: 0 success, 1 acceptance criterion failure, 2 rejected
// input, 3 broken internal contract.  Failures also land in errors.csv
// next to the other artifacts whenever an output directory is known, so
// scripted callers do not need to parse stderr.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "modlp/modlp.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCriterionFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

struct CommandSpec {
  std::string name;
  std::string summary;
};

const std::vector<CommandSpec> kCommands = {
    {"lattice-spectrum",
     "lattice ground-state spectrum and region defect decay"},
    {"modular-decay",
     "interpolation-exponent sweep of modular compression defects"},
    {"fock-sandwich",
     "second-quantized singular-value bounds between damping envelopes"},
    {"gns-verify",
     "modular-structure identities of states on matrix algebras"},
    {"loewner-sweep",
     "operator-monotonicity trials for scalar spectral functions"},
    {"acceptance", "full acceptance gate, one verdict per criterion"},
};

// The failure record must never mask the original error, so any
// secondary write problem is swallowed after a stderr note.
void write_error_record(const std::optional<std::filesystem::path>& out_dir,
                        std::uint64_t config_hash, const std::string& kind,
                        const std::string& what) {
  if (!out_dir) return;
  try {
    modlp::CsvTable table({"error_type", "what"});
    table.add_row({kind, what});
    modlp::ensure_directory(*out_dir);
    modlp::write_text_file(*out_dir / "errors.csv", table.render(config_hash));
  } catch (const std::exception& e) {
    std::cerr << "modlp: could not write errors.csv: " << e.what() << "\n";
  }
}

int run_subcommand(const std::string& command, const std::string& config_path,
                   const modlp::CliOverrides& overrides) {
  // Before the config parses, the only usable output location is an
  // explicit --out; afterwards the run's own directory takes over.
  std::optional<std::filesystem::path> error_dir;
  if (overrides.out_dir) error_dir = *overrides.out_dir;
  std::uint64_t config_hash = 0;

  try {
    const modlp::RunConfig cfg = modlp::load_run_config(config_path, overrides);
    error_dir = cfg.out_dir;
    config_hash = cfg.config_hash;
    if (cfg.command != command)
      throw modlp::input_error("config " + config_path + " describes command \"" +
                               cfg.command + "\", but \"" + command +
                               "\" was invoked");

    modlp::ArtifactList files;
    int exit_code = kExitPass;
    if (command == "acceptance") {
      const modlp::AcceptanceOutcome outcome = modlp::run_acceptance(cfg);
      for (const modlp::CriterionResult& r : outcome.results)
        std::cout << "criterion " << r.index << " " << r.name << " "
                  << (r.pass ? "pass" : "FAIL") << " "
                  << modlp::format_double(r.seconds, 3) << "s  " << r.detail
                  << "\n";
      files = outcome.files;
      if (!outcome.all_pass) exit_code = kExitCriterionFailure;
    } else {
      files = modlp::run_report_command(cfg);
    }
    for (const std::filesystem::path& p : files)
      std::cout << "wrote " << p.string() << "\n";
    return exit_code;
  } catch (const modlp::input_error& e) {
    std::cerr << "modlp: " << e.what() << "\n";
    write_error_record(error_dir, config_hash, "input_error", e.what());
    return kExitInputError;
  } catch (const modlp::internal_error& e) {
    std::cerr << "modlp: internal contract violation: " << e.what() << "\n";
    write_error_record(error_dir, config_hash, "internal_error", e.what());
    return kExitInternalError;
  } catch (const std::exception& e) {
    std::cerr << "modlp: unexpected failure: " << e.what() << "\n";
    write_error_record(error_dir, config_hash, "unexpected_error", e.what());
    return kExitInternalError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional modular interpolation reports"};
  app.require_subcommand(1);

  struct SubState {
    CLI::App* sub = nullptr;
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
  };
  std::vector<SubState> states(kCommands.size());

  for (std::size_t i = 0; i < kCommands.size(); ++i) {
    SubState& st = states[i];
    st.sub = app.add_subcommand(kCommands[i].name, kCommands[i].summary);
    st.sub->add_option("--config", st.config_path, "JSON run description")
        ->required();
    st.sub->add_option("--out", st.out_dir,
                       "output directory (overrides the config)");
    st.sub->add_option("--seed", st.seed, "base RNG seed (overrides the config)");
    st.sub->add_option("--threads", st.threads,
                       "worker thread count (overrides the config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 treats --help as a ParseError with exit code 0; anything
    // else is malformed input under this tool's exit-code contract.
    const int cli_code = app.exit(e);
    return cli_code == 0 ? kExitPass : kExitInputError;
  }

  for (const SubState& st : states) {
    if (!st.sub->parsed()) continue;
    modlp::CliOverrides overrides;
    if (st.sub->count("--out") > 0) overrides.out_dir = st.out_dir;
    if (st.sub->count("--seed") > 0) overrides.seed = st.seed;
    if (st.sub->count("--threads") > 0) overrides.threads = st.threads;
    return run_subcommand(st.sub->get_name(), st.config_path, overrides);
  }
  std::cerr << "modlp: no subcommand selected\n";
  return kExitInputError;
}
