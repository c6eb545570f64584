#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bhs/esm.hpp"
#include "bhs/forward.hpp"
#include "bhs/indicator.hpp"

namespace bhs::io {

// Shortest text that reads back to the same double: printf("%.17g").
std::string format_double(double v);
double parse_double(std::string_view s);

// ---- far-field matrices: "#bhff v1" ---------------------------------------
//   #bhff v1
//   kappa=<17 significant digits>
//   N=<int>
//   N rows of 2N numbers: re(F[i][0]) im(F[i][0]) ... re(F[i][N-1]) im(F[i][N-1])
// Directions are implicit: theta_i = 2 pi i / N, 0-based.
void write_farfield(std::ostream& os, const forward::FarFieldMatrix& f);
void write_farfield(const std::filesystem::path& path, const forward::FarFieldMatrix& f);

struct FarFieldFile {
  forward::FarFieldMatrix data;
  // Odd N is readable but has no -xhat on the grid, so reciprocity
  // diagnostics are unavailable.
  bool even_N = true;
};
FarFieldFile read_farfield(std::istream& is);
FarFieldFile read_farfield(const std::filesystem::path& path);

// ---- indicator maps: "#bhind v1" -------------------------------------------
//   #bhind v1
//   grid=<xmin> <xmax> <ymin> <ymax> <nx> <ny>
//   method=<tag>
//   kappas=<k1> [<k2> ...]
//   alpha=<a>
//   delta=<d>
//   seed=<s>
//   radius=<R>
//   ny rows of nx values, first row at ymin
void write_indicator(std::ostream& os, const IndicatorMap& map);
void write_indicator(const std::filesystem::path& path, const IndicatorMap& map);
IndicatorMap read_indicator(std::istream& is);
IndicatorMap read_indicator(const std::filesystem::path& path);

// ---- masks: "#bhmask v1", same grid line, then ny rows of 0/1 --------------
void write_mask(std::ostream& os, const Mask& mask);
void write_mask(const std::filesystem::path& path, const Mask& mask);

// ---- heatmaps: plain PGM (P2), maxval 65535 --------------------------------
// pixel = floor((v - min) / (max - min) * 65535 + 0.5); all zero when
// max == min. Row 0 of the image is the grid row at ymax.
std::vector<std::uint16_t> heatmap_pixels(const IndicatorMap& map);
void write_heatmap(std::ostream& os, const IndicatorMap& map);
void write_heatmap(const std::filesystem::path& path, const IndicatorMap& map);

// ---- localization results: "#bhloc v1" -------------------------------------
void write_localization(std::ostream& os, const esm::LocalizationResult& r);
void write_localization(const std::filesystem::path& path, const esm::LocalizationResult& r);

// ---- scenarios --------------------------------------------------------------

enum class Mode { Forward, Lsm, Esm, EsmMultilevel };
std::string_view mode_name(Mode m);

struct Scenario {
  Mode mode = Mode::Forward;
  std::string shape = "circle";
  Vec2 center{0.0, 0.0};
  double scale = 1.0;

  double kappa = 6.283185307179586;  // 2 pi
  // Multi-frequency range; used by the esm modes when L >= 2.
  std::optional<double> kappa_min, kappa_max;
  int L = 1;

  int N = 32;
  int n = 128;
  double delta = 0.0;
  std::uint64_t seed = 1;
  double alpha = 0.0;  // resolved from the mode when not given
  bool morozov = false;

  double xmin = -1.5, xmax = 1.5, ymin = -1.5, ymax = 1.5;
  int nx = 128, ny = 128;
  double zeta = 0.2;

  double R = 0.5;
  double R0 = 4.0;
  std::vector<double> directions{1.0471975511965976};  // pi/3
  std::string output = "bhs_out";
  std::string farfield;  // optional input far-field file

  std::vector<std::string> warnings;

  std::vector<double> kappas() const;
  SamplingGrid grid() const { return {xmin, xmax, ymin, ymax, nx, ny}; }
};

// key=value lines, '#' starts a comment. Numbers accept simple products and
// quotients with the symbol pi ("2*pi", "pi/3", "-1.5"). Unknown keys,
// malformed or out-of-range values throw ConfigError naming the key and line;
// a repeated key overrides the earlier one and adds a warning.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Self-describing manifest ("#bhman v1"): every effective scenario key, then
// result lines as comments. Parses back with parse_scenario.
std::string manifest_text(const Scenario& s, const std::vector<std::pair<std::string, std::string>>& results);

// ---- drivers ----------------------------------------------------------------

// Runs one scenario, writing <output>.* files. Returns the process exit code.
// Progress goes to `out`, diagnostics to `err`.
int run(const Scenario& s, std::ostream& out, std::ostream& err);

// Prints grid metadata and the reciprocity residual of a far-field file.
int verify(const std::filesystem::path& farfield, std::ostream& out, std::ostream& err);

}  // namespace bhs::io
