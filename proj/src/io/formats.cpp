#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bhs/error.hpp"
#include "bhs/io.hpp"

namespace bhs::io {

namespace {

std::string next_line(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError(std::string(what) + ": unexpected end of file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void expect_magic(std::istream& is, std::string_view magic, std::string_view version) {
  const std::string line = next_line(is, "header");
  const std::string want = std::string(magic) + " " + std::string(version);
  if (line == want) return;
  if (line.rfind(std::string(magic) + " ", 0) == 0)
    throw FormatError("unsupported version '" + line.substr(magic.size() + 1) + "' (expected " + std::string(version) + ")");
  throw FormatError("bad magic line '" + line + "' (expected '" + want + "')");
}

std::string expect_key(std::istream& is, std::string_view key) {
  const std::string line = next_line(is, "header");
  const std::string prefix = std::string(key) + "=";
  if (line.rfind(prefix, 0) != 0) throw FormatError("expected '" + prefix + "...', got '" + line + "'");
  return line.substr(prefix.size());
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

long parse_int(std::string_view s) {
  long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw FormatError("malformed integer '" + std::string(s) + "'");
  return v;
}

template <class Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  fn(os);
  os.flush();
  if (!os) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::ifstream open_read(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return is;
}

std::string grid_line(const SamplingGrid& g) {
  return "grid=" + format_double(g.xmin()) + " " + format_double(g.xmax()) + " " + format_double(g.ymin()) + " " +
         format_double(g.ymax()) + " " + std::to_string(g.nx()) + " " + std::to_string(g.ny());
}

SamplingGrid parse_grid(std::istream& is) {
  const std::string line = expect_key(is, "grid");
  const auto t = split_ws(line);
  if (t.size() != 6) throw FormatError("grid line needs 6 fields");
  try {
    return {parse_double(t[0]), parse_double(t[1]), parse_double(t[2]), parse_double(t[3]), int(parse_int(t[4])),
            int(parse_int(t[5]))};
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid grid: ") + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const char* b = s.data();
  if (!s.empty() && s.front() == '+') ++b;
  const auto [p, ec] = std::from_chars(b, s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw FormatError("malformed number '" + std::string(s) + "'");
  return v;
}

// ---------------------------------------------------------------------------

void write_farfield(std::ostream& os, const forward::FarFieldMatrix& f) {
  os << "#bhff v1\n" << "kappa=" << format_double(f.kappa) << "\n" << "N=" << f.N << "\n";
  for (int i = 0; i < f.N; ++i) {
    for (int j = 0; j < f.N; ++j) {
      const cplx z = f.F(i, j);
      os << (j ? " " : "") << format_double(z.real()) << " " << format_double(z.imag());
    }
    os << "\n";
  }
}

void write_farfield(const std::filesystem::path& path, const forward::FarFieldMatrix& f) {
  write_file(path, [&](std::ostream& os) { write_farfield(os, f); });
}

FarFieldFile read_farfield(std::istream& is) {
  expect_magic(is, "#bhff", "v1");
  const double kappa = parse_double(expect_key(is, "kappa"));
  const long N = parse_int(expect_key(is, "N"));
  if (N < 1 || N > 100000) throw FormatError("N out of range: " + std::to_string(N));
  std::vector<cplx> data;
  data.reserve(std::size_t(N) * N);
  for (long i = 0; i < N; ++i) {
    const std::string line = next_line(is, "far-field rows");
    const auto t = split_ws(line);
    if (t.size() != std::size_t(2 * N))
      throw FormatError("row " + std::to_string(i) + " has " + std::to_string(t.size()) + " values, expected " +
                        std::to_string(2 * N));
    for (long j = 0; j < N; ++j) data.emplace_back(parse_double(t[2 * j]), parse_double(t[2 * j + 1]));
  }
  std::string extra;
  while (std::getline(is, extra))
    if (!split_ws(extra).empty()) throw FormatError("trailing data after " + std::to_string(N) + " rows");
  try {
    return {{kappa, int(N), ComplexMatrix(N, N, std::move(data))}, N % 2 == 0};
  } catch (const DomainError& e) {
    throw FormatError(std::string("far-field data: ") + e.what());
  }
}

FarFieldFile read_farfield(const std::filesystem::path& path) {
  auto is = open_read(path);
  return read_farfield(is);
}

// ---------------------------------------------------------------------------

void write_indicator(std::ostream& os, const IndicatorMap& map) {
  const auto& g = map.grid;
  os << "#bhind v1\n" << grid_line(g) << "\n";
  os << "method=" << map.meta.method << "\n";
  os << "kappas=";
  for (std::size_t k = 0; k < map.meta.kappas.size(); ++k) os << (k ? " " : "") << format_double(map.meta.kappas[k]);
  os << "\n";
  os << "alpha=" << format_double(map.meta.alpha) << "\n";
  os << "delta=" << format_double(map.meta.delta) << "\n";
  os << "seed=" << map.meta.seed << "\n";
  os << "radius=" << format_double(map.meta.radius) << "\n";
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ix = 0; ix < g.nx(); ++ix) os << (ix ? " " : "") << format_double(map.values[std::size_t(iy) * g.nx() + ix]);
    os << "\n";
  }
}

void write_indicator(const std::filesystem::path& path, const IndicatorMap& map) {
  write_file(path, [&](std::ostream& os) { write_indicator(os, map); });
}

IndicatorMap read_indicator(std::istream& is) {
  expect_magic(is, "#bhind", "v1");
  const SamplingGrid g = parse_grid(is);
  IndicatorMeta meta;
  meta.method = expect_key(is, "method");
  const std::string kappas = expect_key(is, "kappas");
  for (auto t : split_ws(kappas)) meta.kappas.push_back(parse_double(t));
  meta.alpha = parse_double(expect_key(is, "alpha"));
  meta.delta = parse_double(expect_key(is, "delta"));
  const std::string seed = expect_key(is, "seed");
  {
    const auto [p, ec] = std::from_chars(seed.data(), seed.data() + seed.size(), meta.seed);
    if (ec != std::errc() || p != seed.data() + seed.size()) throw FormatError("malformed seed '" + seed + "'");
  }
  meta.radius = parse_double(expect_key(is, "radius"));
  std::vector<double> values;
  values.reserve(g.size());
  for (int iy = 0; iy < g.ny(); ++iy) {
    const std::string line = next_line(is, "indicator rows");
    const auto t = split_ws(line);
    if (t.size() != std::size_t(g.nx())) throw FormatError("indicator row " + std::to_string(iy) + " has wrong length");
    for (auto v : t) values.push_back(parse_double(v));
  }
  return {g, std::move(values), std::move(meta)};
}

IndicatorMap read_indicator(const std::filesystem::path& path) {
  auto is = open_read(path);
  return read_indicator(is);
}

// ---------------------------------------------------------------------------

void write_mask(std::ostream& os, const Mask& mask) {
  const auto& g = mask.grid;
  os << "#bhmask v1\n" << grid_line(g) << "\n";
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ix = 0; ix < g.nx(); ++ix) os << (ix ? " " : "") << int(mask.inside[std::size_t(iy) * g.nx() + ix]);
    os << "\n";
  }
}

void write_mask(const std::filesystem::path& path, const Mask& mask) {
  write_file(path, [&](std::ostream& os) { write_mask(os, mask); });
}

// ---------------------------------------------------------------------------

std::vector<std::uint16_t> heatmap_pixels(const IndicatorMap& map) {
  const auto& g = map.grid;
  double lo = map.values.front(), hi = lo;
  for (double v : map.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<std::uint16_t> px(g.size(), 0);
  if (!(hi > lo)) return px;
  for (int row = 0; row < g.ny(); ++row) {
    const int iy = g.ny() - 1 - row;
    for (int ix = 0; ix < g.nx(); ++ix) {
      const double v = map.values[std::size_t(iy) * g.nx() + ix];
      const double p = std::floor((v - lo) / (hi - lo) * 65535.0 + 0.5);
      px[std::size_t(row) * g.nx() + ix] = static_cast<std::uint16_t>(std::clamp(p, 0.0, 65535.0));
    }
  }
  return px;
}

void write_heatmap(std::ostream& os, const IndicatorMap& map) {
  const auto& g = map.grid;
  const auto px = heatmap_pixels(map);
  os << "P2\n" << g.nx() << " " << g.ny() << "\n65535\n";
  for (int row = 0; row < g.ny(); ++row) {
    for (int ix = 0; ix < g.nx(); ++ix) os << (ix ? " " : "") << px[std::size_t(row) * g.nx() + ix];
    os << "\n";
  }
}

void write_heatmap(const std::filesystem::path& path, const IndicatorMap& map) {
  write_file(path, [&](std::ostream& os) { write_heatmap(os, map); });
}

// ---------------------------------------------------------------------------

void write_localization(std::ostream& os, const esm::LocalizationResult& r) {
  os << "#bhloc v1\n";
  os << "z_star=" << format_double(r.z_star.x) << " " << format_double(r.z_star.y) << "\n";
  os << "R_final=" << format_double(r.R_final) << "\n";
  os << "low_confidence=" << (r.low_confidence ? 1 : 0) << "\n";
  os << "reached_cap=" << (r.reached_cap ? 1 : 0) << "\n";
  os << "levels=" << r.history.size() << "\n";
  for (const auto& h : r.history)
    os << "level=" << h.level << " R=" << format_double(h.R) << " R_used=" << format_double(h.R_used)
       << " z=" << format_double(h.minimizer.x) << " " << format_double(h.minimizer.y) << " grid=" << h.nx << "x"
       << h.ny << "\n";
}

void write_localization(const std::filesystem::path& path, const esm::LocalizationResult& r) {
  write_file(path, [&](std::ostream& os) { write_localization(os, r); });
}

}  // namespace bhs::io
