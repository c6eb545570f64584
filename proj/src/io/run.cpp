#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "bhs/error.hpp"
#include "bhs/esm.hpp"
#include "bhs/forward.hpp"
#include "bhs/io.hpp"
#include "bhs/lsm.hpp"

namespace bhs::io {

namespace {

using Results = std::vector<std::pair<std::string, std::string>>;

std::filesystem::path out_path(const Scenario& s, const char* ext) { return s.output + ext; }

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
  os << text;
}

geometry::ParametricCurve scenario_curve(const Scenario& s) {
  return geometry::make_named_curve(s.shape, s.center, s.scale);
}

forward::FarFieldMatrix scenario_matrix(const Scenario& s, std::ostream& err) {
  if (!s.farfield.empty()) {
    FarFieldFile f = read_farfield(std::filesystem::path(s.farfield));
    if (f.data.N != s.N) err << "note: far-field file has N=" << f.data.N << " (scenario N=" << s.N << " ignored)\n";
    return std::move(f.data);
  }
  return forward::add_noise(forward::far_field_matrix(scenario_curve(s), s.kappa, s.N, s.n), s.delta, s.seed);
}

std::string reciprocity_text(const forward::FarFieldMatrix& f) {
  return f.N % 2 == 0 ? format_double(forward::reciprocity_residual(f)) : std::string("unavailable (odd N)");
}

std::vector<esm::FarFieldColumn> scenario_columns(const Scenario& s) {
  std::vector<esm::FarFieldColumn> cols;
  if (!s.farfield.empty()) {
    const FarFieldFile f = read_farfield(std::filesystem::path(s.farfield));
    for (double theta : s.directions) {
      const double idx = theta / (2.0 * std::numbers::pi) * f.data.N;
      const long j = std::lround(idx);
      if (std::abs(idx - double(j)) > 1e-9)
        throw ConfigError("key 'directions': angle " + format_double(theta) + " is not on the file's direction grid");
      cols.push_back({f.data.kappa, f.data.F.column(std::size_t(((j % f.data.N) + f.data.N) % f.data.N))});
    }
    return cols;
  }
  const auto curve = scenario_curve(s);
  std::vector<Vec2> dirs;
  for (double theta : s.directions) dirs.push_back(unit_direction(theta));
  const auto kappas = s.kappas();
  for (std::size_t l = 0; l < kappas.size(); ++l) {
    auto block = forward::far_field_columns(curve, kappas[l], s.N, s.n, dirs);
    if (s.delta > 0.0) {
      // Column j takes column j mod N of a seeded noise matrix; each
      // wavenumber gets its own stream.
      const ComplexMatrix e = forward::noise_matrix(s.N, s.seed + l);
      for (std::size_t j = 0; j < block.size(); ++j)
        for (int i = 0; i < s.N; ++i) block[j][i] *= 1.0 + s.delta * e(i, j % s.N);
    }
    for (auto& c : block) cols.push_back({kappas[l], std::move(c)});
  }
  return cols;
}

void prepare_output(const Scenario& s) {
  const auto parent = std::filesystem::path(s.output).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

void finish(const Scenario& s, const Results& r, std::ostream& out) {
  write_text(out_path(s, ".manifest"), manifest_text(s, r));
  for (const auto& [k, v] : r) out << k << ": " << v << "\n";
}

void run_forward(const Scenario& s, std::ostream& out, std::ostream& err) {
  const auto f = scenario_matrix(s, err);
  write_farfield(out_path(s, ".bhff"), f);
  finish(s, {{"reciprocity_residual", reciprocity_text(f)}, {"farfield_file", out_path(s, ".bhff").string()}}, out);
}

void run_lsm(const Scenario& s, std::ostream& out, std::ostream& err) {
  const auto f = scenario_matrix(s, err);
  const SamplingGrid grid = s.grid();
  IndicatorMap map = s.morozov ? lsm::lsm_indicator_morozov(f, grid, s.delta) : lsm::lsm_indicator(f, grid, s.alpha);
  map.meta.delta = s.delta;
  map.meta.seed = s.seed;
  const Mask mask = lsm::classify(map, s.zeta);
  write_indicator(out_path(s, ".bhind"), map);
  write_mask(out_path(s, ".mask"), mask);
  write_heatmap(out_path(s, ".pgm"), map);
  Results r{{"reciprocity_residual", reciprocity_text(f)},
            {"effective_alpha", format_double(map.meta.alpha)},
            {"mask_points", std::to_string(mask.count())}};
  if (mask.count() > 0) {
    const Vec2 c = mask.centroid();
    r.push_back({"mask_centroid", format_double(c.x) + " " + format_double(c.y)});
  }
  finish(s, r, out);
}

void run_esm(const Scenario& s, std::ostream& out, std::ostream& err) {
  const auto cols = scenario_columns(s);
  esm::EsmConfig cfg;
  cfg.alpha = s.alpha;
  cfg.R = s.R;
  cfg.grid = s.grid();
  esm::EsmResult res = esm::esm_indicator(cols, cfg);
  res.map.meta.delta = s.delta;
  res.map.meta.seed = s.seed;
  for (const auto& w : res.warnings) err << "warning: " << w << "\n";
  esm::LocalizationResult loc;
  loc.z_star = res.z_star;
  loc.R_final = s.R;
  loc.history.push_back({0, s.R, res.R_used, res.z_star, cfg.grid.nx(), cfg.grid.ny()});
  loc.warnings = res.warnings;
  write_indicator(out_path(s, ".bhind"), res.map);
  write_heatmap(out_path(s, ".pgm"), res.map);
  write_localization(out_path(s, ".loc"), loc);
  finish(s,
         {{"z_star", format_double(res.z_star.x) + " " + format_double(res.z_star.y)},
          {"R_used", format_double(res.R_used)},
          {"columns", std::to_string(cols.size())}},
         out);
}

void run_multilevel(const Scenario& s, std::ostream& out, std::ostream& err) {
  const auto cols = scenario_columns(s);
  esm::EsmConfig cfg;
  cfg.alpha = s.alpha;
  const auto res = esm::multilevel_esm(cols, s.R0, {s.xmin, s.xmax, s.ymin, s.ymax}, cfg);
  for (const auto& w : res.warnings) err << "warning: " << w << "\n";
  write_localization(out_path(s, ".loc"), res);
  std::ostringstream sched;
  for (std::size_t k = 0; k < res.history.size(); ++k) sched << (k ? " " : "") << format_double(res.history[k].R);
  finish(s,
         {{"z_star", format_double(res.z_star.x) + " " + format_double(res.z_star.y)},
          {"R_final", format_double(res.R_final)},
          {"radius_schedule", sched.str()},
          {"low_confidence", res.low_confidence ? "1" : "0"},
          {"reached_cap", res.reached_cap ? "1" : "0"}},
         out);
}

}  // namespace

int run(const Scenario& s, std::ostream& out, std::ostream& err) {
  try {
    for (const auto& w : s.warnings) err << "warning: " << w << "\n";
    prepare_output(s);
    switch (s.mode) {
      case Mode::Forward: run_forward(s, out, err); break;
      case Mode::Lsm: run_lsm(s, out, err); break;
      case Mode::Esm: run_esm(s, out, err); break;
      case Mode::EsmMultilevel: run_multilevel(s, out, err); break;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int verify(const std::filesystem::path& farfield, std::ostream& out, std::ostream& err) {
  try {
    const FarFieldFile f = read_farfield(farfield);
    out << "kappa: " << format_double(f.data.kappa) << "\n";
    out << "N: " << f.data.N << "\n";
    out << "directions: theta_i = 2*pi*i/N, i = 0.." << f.data.N - 1 << "\n";
    out << "max_abs: " << format_double(f.data.F.max_abs()) << "\n";
    if (!f.even_N) {
      out << "reciprocity_residual: unavailable (odd N has no antipodal directions on the grid)\n";
      return 0;
    }
    out << "reciprocity_residual: " << format_double(forward::reciprocity_residual(f.data)) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bhs::io
