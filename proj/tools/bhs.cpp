// bhs: clamped-cavity biharmonic scattering drivers.
//
//   bhs forward|lsm|esm|esm-multilevel <scenario> [--output PREFIX] [-q]
//   bhs verify <farfield-file>

#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bhs/error.hpp"
#include "bhs/io.hpp"
#include "bhs/simd.hpp"

namespace {

int run_mode(bhs::io::Mode mode, const std::string& path, const std::string& output, bool quiet) {
  bhs::io::Scenario s;
  try {
    s = bhs::io::load_scenario(path);
  } catch (const bhs::ConfigError& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return 2;
  }
  if (s.mode != mode) {
    std::cerr << "error: scenario mode is '" << bhs::io::mode_name(s.mode) << "' but the '"
              << bhs::io::mode_name(mode) << "' command was used\n";
    return 2;
  }
  if (!output.empty()) s.output = output;
  std::ostringstream sink;
  std::ostream& out = quiet ? static_cast<std::ostream&>(sink) : std::cout;
  return bhs::io::run(s, out, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clamped-cavity biharmonic scattering: forward solver, LSM and ESM imaging"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  std::string output;
  app.add_flag("-q,--quiet", quiet, "Suppress result lines on stdout");
  app.add_flag_callback("--version", [] {
    std::cout << "bhs 1.0 (kernels: " << bhs::simd::name(bhs::simd::active_backend()) << ")\n";
    std::exit(0);
  });

  struct Cmd {
    const char* name;
    bhs::io::Mode mode;
    const char* help;
  };
  const Cmd cmds[] = {
      {"forward", bhs::io::Mode::Forward, "Compute a far-field matrix"},
      {"lsm", bhs::io::Mode::Lsm, "Linear sampling reconstruction"},
      {"esm", bhs::io::Mode::Esm, "Extended sampling localization at a fixed radius"},
      {"esm-multilevel", bhs::io::Mode::EsmMultilevel, "Multilevel extended sampling localization"},
  };
  std::string scenario;
  int status = 0;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("scenario", scenario, "Scenario file (key=value)")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", output, "Output path prefix (overrides the scenario)");
    sub->callback([&, mode = c.mode] { status = run_mode(mode, scenario, output, quiet); });
  }
  std::string farfield;
  auto* ver = app.add_subcommand("verify", "Print grid metadata and the reciprocity residual of a far-field file");
  ver->add_option("farfield", farfield, "Far-field file (#bhff v1)")->required()->check(CLI::ExistingFile);
  ver->callback([&] { status = bhs::io::verify(farfield, std::cout, std::cerr); });

  CLI11_PARSE(app, argc, argv);
  return status;
}
