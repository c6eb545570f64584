#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "bhs/error.hpp"
#include "bhs/geometry.hpp"
#include "bhs/io.hpp"
#include "bhs/lsm.hpp"

namespace bhs::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Tiny expression grammar: ['-'] factor (('*' | '/') factor)*, factor being a
// decimal number or "pi".
class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  double parse() {
    skip();
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = get() == '-' ? -1.0 : 1.0;
      skip();
    }
    double v = sign * factor();
    for (skip(); pos_ < s_.size(); skip()) {
      const char op = get();
      skip();
      if (op == '*')
        v *= factor();
      else if (op == '/')
        v /= factor();
      else
        throw std::invalid_argument("unexpected character");
    }
    return v;
  }

 private:
  double factor() {
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) throw std::invalid_argument("malformed number");
    pos_ = std::size_t(p - s_.data());
    return v;
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct LineCtx {
  std::string key;
  int line;

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': " + why);
  }

  double number(const std::string& v) const {
    double x = 0.0;
    try {
      x = ExprParser(v).parse();
    } catch (const std::invalid_argument&) {
      fail("malformed number '" + v + "'");
    }
    if (!std::isfinite(x)) fail("value must be finite");
    return x;
  }
  double positive(const std::string& v) const {
    const double x = number(v);
    if (!(x > 0.0)) fail("must be positive, got " + v);
    return x;
  }
  long integer(const std::string& v) const {
    long x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail("malformed integer '" + v + "'");
    return x;
  }
  std::vector<double> list(const std::string& v) const {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(trim(item)));
    if (out.empty()) fail("empty list");
    return out;
  }
};

Mode parse_mode(const LineCtx& c, const std::string& v) {
  if (v == "forward") return Mode::Forward;
  if (v == "lsm") return Mode::Lsm;
  if (v == "esm") return Mode::Esm;
  if (v == "esm-multilevel") return Mode::EsmMultilevel;
  c.fail("unknown mode '" + v + "' (expected forward, lsm, esm, esm-multilevel)");
}

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Forward: return "forward";
    case Mode::Lsm: return "lsm";
    case Mode::Esm: return "esm";
    case Mode::EsmMultilevel: return "esm-multilevel";
  }
  return "?";
}

std::vector<double> Scenario::kappas() const {
  if (L >= 2 && kappa_min && kappa_max) {
    std::vector<double> k(L);
    for (int l = 0; l < L; ++l) k[l] = *kappa_min + l * (*kappa_max - *kappa_min) / (L - 1);
    return k;
  }
  return {kappa};
}

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::map<std::string, int> seen;
  bool have_mode = false, have_alpha = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
    const LineCtx c{trim(std::string_view(line).substr(0, eq)), lineno};
    const std::string v = trim(std::string_view(line).substr(eq + 1));
    const std::string& k = c.key;
    if (v.empty()) c.fail("empty value");

    if (k == "mode") {
      s.mode = parse_mode(c, v);
      have_mode = true;
    } else if (k == "shape") {
      try {
        geometry::parse_shape(v);
      } catch (const ConfigError& e) {
        c.fail(e.what());
      }
      s.shape = v;
    } else if (k == "center") {
      const auto xy = c.list(v);
      if (xy.size() != 2) c.fail("expected two comma-separated coordinates");
      s.center = {xy[0], xy[1]};
    } else if (k == "scale") {
      s.scale = c.positive(v);
    } else if (k == "kappa") {
      s.kappa = c.positive(v);
    } else if (k == "kappa_min") {
      s.kappa_min = c.positive(v);
    } else if (k == "kappa_max") {
      s.kappa_max = c.positive(v);
    } else if (k == "L") {
      const long L = c.integer(v);
      if (L < 1 || L > 64) c.fail("must be in [1, 64]");
      s.L = int(L);
    } else if (k == "N") {
      const long N = c.integer(v);
      if (N < 8 || N > 4096 || N % 2 != 0) c.fail("must be even and in [8, 4096]");
      s.N = int(N);
    } else if (k == "n") {
      const long n = c.integer(v);
      if (n < 8 || n > 1024 || !is_power_of_two(n)) c.fail("must be a power of two in [8, 1024]");
      s.n = int(n);
    } else if (k == "delta") {
      s.delta = c.number(v);
      if (!(s.delta >= 0.0)) c.fail("must be nonnegative");
    } else if (k == "seed") {
      std::uint64_t seed = 0;
      const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
      if (ec != std::errc() || p != v.data() + v.size()) c.fail("malformed unsigned integer '" + v + "'");
      s.seed = seed;
    } else if (k == "alpha") {
      s.alpha = c.positive(v);
      have_alpha = true;
    } else if (k == "morozov") {
      if (v != "0" && v != "1" && v != "true" && v != "false") c.fail("expected true/false");
      s.morozov = (v == "1" || v == "true");
    } else if (k == "xmin") {
      s.xmin = c.number(v);
    } else if (k == "xmax") {
      s.xmax = c.number(v);
    } else if (k == "ymin") {
      s.ymin = c.number(v);
    } else if (k == "ymax") {
      s.ymax = c.number(v);
    } else if (k == "nx" || k == "ny") {
      const long m = c.integer(v);
      if (m < 2 || m > 4096) c.fail("must be in [2, 4096]");
      (k == "nx" ? s.nx : s.ny) = int(m);
    } else if (k == "zeta") {
      s.zeta = c.positive(v);
    } else if (k == "R") {
      s.R = c.positive(v);
    } else if (k == "R0") {
      s.R0 = c.positive(v);
    } else if (k == "directions") {
      s.directions = c.list(v);
    } else if (k == "output") {
      s.output = v;
    } else if (k == "farfield") {
      s.farfield = v;
    } else {
      c.fail("unknown key");
    }

    if (auto it = seen.find(k); it != seen.end())
      s.warnings.push_back("line " + std::to_string(lineno) + ": key '" + k + "' repeats line " +
                           std::to_string(it->second) + "; last value wins");
    seen[k] = lineno;
  }

  if (!have_mode) throw ConfigError("missing required key 'mode'");
  if (!have_alpha) s.alpha = (s.mode == Mode::Lsm || s.mode == Mode::Forward) ? lsm::default_alpha : esm::default_alpha;
  if (!(s.xmin < s.xmax)) throw ConfigError("key 'xmin': must be below xmax");
  if (!(s.ymin < s.ymax)) throw ConfigError("key 'ymin': must be below ymax");
  if (s.kappa_min.has_value() != s.kappa_max.has_value())
    throw ConfigError("key 'kappa_min': kappa_min and kappa_max must be given together");
  if (s.kappa_min && !(*s.kappa_min < *s.kappa_max)) throw ConfigError("key 'kappa_min': must be below kappa_max");
  if (s.L >= 2 && !s.kappa_min) throw ConfigError("key 'L': L >= 2 needs kappa_min and kappa_max");
  if (s.morozov && !(s.delta > 0.0)) throw ConfigError("key 'morozov': the discrepancy principle needs delta > 0");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_scenario(ss.str());
}

std::string manifest_text(const Scenario& s, const std::vector<std::pair<std::string, std::string>>& results) {
  std::ostringstream os;
  auto d = [](double v) { return format_double(v); };
  os << "#bhman v1\n";
  os << "mode=" << mode_name(s.mode) << "\n";
  os << "shape=" << s.shape << "\n";
  os << "center=" << d(s.center.x) << "," << d(s.center.y) << "\n";
  os << "scale=" << d(s.scale) << "\n";
  os << "kappa=" << d(s.kappa) << "\n";
  if (s.kappa_min) os << "kappa_min=" << d(*s.kappa_min) << "\n" << "kappa_max=" << d(*s.kappa_max) << "\n";
  os << "L=" << s.L << "\n";
  os << "N=" << s.N << "\n";
  os << "n=" << s.n << "\n";
  os << "delta=" << d(s.delta) << "\n";
  os << "seed=" << s.seed << "\n";
  os << "alpha=" << d(s.alpha) << "\n";
  os << "morozov=" << (s.morozov ? "true" : "false") << "\n";
  os << "xmin=" << d(s.xmin) << "\nxmax=" << d(s.xmax) << "\nymin=" << d(s.ymin) << "\nymax=" << d(s.ymax) << "\n";
  os << "nx=" << s.nx << "\nny=" << s.ny << "\n";
  os << "zeta=" << d(s.zeta) << "\n";
  os << "R=" << d(s.R) << "\n";
  os << "R0=" << d(s.R0) << "\n";
  os << "directions=";
  for (std::size_t k = 0; k < s.directions.size(); ++k) os << (k ? "," : "") << d(s.directions[k]);
  os << "\n";
  os << "output=" << s.output << "\n";
  if (!s.farfield.empty()) os << "farfield=" << s.farfield << "\n";
  for (const auto& [k, v] : results) os << "# " << k << "=" << v << "\n";
  for (const auto& w : s.warnings) os << "# warning: " << w << "\n";
  return os.str();
}

}  // namespace bhs::io
