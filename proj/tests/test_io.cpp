#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "bhs/error.hpp"
#include "bhs/io.hpp"
#include "doctest.h"

using namespace bhs;
using namespace bhs::io;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bhs_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

forward::FarFieldMatrix random_farfield(int N, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> d;
  forward::FarFieldMatrix f{std::exp(1.0) * 2.1, N, ComplexMatrix(N, N)};
  for (auto& z : f.F.data()) z = {d(g) * 1e-3, d(g) * 1e7};
  f.F(0, 0) = {5e-324, -0.0};
  return f;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("double formatting round-trips") {
    std::mt19937_64 g(1);
    for (int k = 0; k < 2000; ++k) {
      const double v = std::bit_cast<double>(g());
      if (!std::isfinite(v)) continue;
      CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
  }

  TEST_CASE("far-field files round-trip exactly") {
    const auto f = random_farfield(6, 2);
    std::stringstream ss;
    write_farfield(ss, f);
    const auto back = read_farfield(ss);
    CHECK(back.even_N);
    CHECK(back.data.kappa == f.kappa);
    CHECK(back.data.N == 6);
    CHECK(back.data.F == f.F);
    CHECK(std::signbit(back.data.F(0, 0).imag()));

    const fs::path p = scratch("rt.bhff");
    write_farfield(p, f);
    CHECK(read_farfield(p).data.F == f.F);
  }

  TEST_CASE("zero matrix layout") {
    std::ostringstream os;
    write_farfield(os, {1.0, 4, ComplexMatrix(4, 4)});
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "#bhff v1");
    std::getline(is, line);
    CHECK(line == "kappa=1");
    std::getline(is, line);
    CHECK(line == "N=4");
    int rows = 0;
    while (std::getline(is, line)) {
      CHECK(line == "0 0 0 0 0 0 0 0");
      ++rows;
    }
    CHECK(rows == 4);
  }

  TEST_CASE("odd N is readable but flagged") {
    std::istringstream is("#bhff v1\nkappa=2\nN=3\n1 0 0 0 0 0\n0 0 1 0 0 0\n0 0 0 0 1 0\n");
    const auto f = read_farfield(is);
    CHECK_FALSE(f.even_N);
    CHECK(f.data.F(1, 1) == cplx(1.0));
  }

  TEST_CASE("malformed far-field files") {
    auto bad = [](const char* text) {
      std::istringstream is(text);
      CHECK_THROWS_AS(read_farfield(is), FormatError);
    };
    bad("#bhff v2\nkappa=2\nN=1\n0 0\n");
    bad("#bhind v1\n");
    bad("#bhff v1\nkappa=2\nN=2\n0 0 0 0\n");
    bad("#bhff v1\nkappa=2\nN=2\n0 0 0\n0 0 0 0\n");
    bad("#bhff v1\nkappa=2\nN=1\n0 x\n");
    bad("#bhff v1\nkappa=2\nN=1\n0 0\n1 1\n");
    bad("#bhff v1\nkappa=2\nN=1\nnan 0\n");
  }

  TEST_CASE("indicator files round-trip exactly") {
    IndicatorMap m{SamplingGrid(-1.5, 1.5, -0.5, 2.0, 5, 3), {}, {"esm", {pi, 2 * pi}, 1e-4, 0.05, 17, 0.5}};
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::size_t k = 0; k < m.grid.size(); ++k) m.values.push_back(u(g));
    std::stringstream ss;
    write_indicator(ss, m);
    const auto back = read_indicator(ss);
    CHECK(back.grid == m.grid);
    CHECK(back.values == m.values);
    CHECK(back.meta.method == "esm");
    CHECK(back.meta.kappas == m.meta.kappas);
    CHECK(back.meta.alpha == 1e-4);
    CHECK(back.meta.delta == 0.05);
    CHECK(back.meta.seed == 17u);
    CHECK(back.meta.radius == 0.5);

    std::istringstream wrong("#bhind v9\n");
    CHECK_THROWS_AS(read_indicator(wrong), FormatError);
  }

  TEST_CASE("heatmap pixels on the 2x2 example") {
    // As displayed (top row = ymax) the map is [0 1; 0.5 0.25]; storage runs from ymin up.
    IndicatorMap m{SamplingGrid(0, 1, 0, 1, 2, 2), {0.5, 0.25, 0.0, 1.0}, {}};
    const auto px = heatmap_pixels(m);
    CHECK(px == std::vector<std::uint16_t>{0, 65535, 32768, 16384});
    std::ostringstream os;
    write_heatmap(os, m);
    CHECK(os.str() == "P2\n2 2\n65535\n0 65535\n32768 16384\n");

    IndicatorMap flat{SamplingGrid(0, 1, 0, 1, 3, 2), std::vector<double>(6, 0.7), {}};
    for (auto p : heatmap_pixels(flat)) CHECK(p == 0);
  }

  TEST_CASE("mask and localization files carry magic lines") {
    Mask mk{SamplingGrid(0, 1, 0, 1, 2, 2), {1, 0, 0, 1}};
    std::ostringstream os;
    write_mask(os, mk);
    CHECK(os.str().rfind("#bhmask v1\n", 0) == 0);
    CHECK(os.str().find("1 0\n0 1\n") != std::string::npos);

    esm::LocalizationResult r;
    r.z_star = {-1.5, 1.25};
    r.R_final = 0.5;
    r.history.push_back({0, 1.0, 1.0, {-1.4, 1.3}, 33, 33});
    std::ostringstream ol;
    write_localization(ol, r);
    CHECK(ol.str().rfind("#bhloc v1\n", 0) == 0);
  }

  TEST_CASE("scenario parsing") {
    const auto s = parse_scenario("mode=lsm\nshape=apple\nkappa=6.283185307");
    CHECK(s.mode == Mode::Lsm);
    CHECK(s.shape == "apple");
    CHECK(s.kappa == 6.283185307);
    CHECK(s.alpha == 1e-6);
    CHECK(s.N == 32);
    CHECK((s.nx == 128 && s.ny == 128));
    CHECK((s.xmin == -1.5 && s.xmax == 1.5 && s.ymin == -1.5 && s.ymax == 1.5));
    CHECK(s.warnings.empty());

    CHECK(parse_scenario("mode=esm").alpha == 1e-4);
    const auto m = parse_scenario("mode=esm-multilevel\nR0=4.0");
    CHECK(m.R0 == 4.0);

    const auto e = parse_scenario("mode=esm\nkappa=2*pi\ndirections=0, pi/5 ,2*pi/5\nkappa_min=pi\nkappa_max=4*pi\nL=5");
    CHECK(e.kappa == 2 * pi);
    CHECK(e.directions.size() == 3u);
    CHECK(e.directions[1] == pi / 5);
    const auto ks = e.kappas();
    REQUIRE(ks.size() == 5u);
    CHECK(ks.front() == pi);
    CHECK(ks.back() == 4 * pi);
    CHECK(ks[2] == doctest::Approx(2.5 * pi));
  }

  TEST_CASE("scenario errors name the key and line") {
    auto err = [](const char* text) {
      try {
        parse_scenario(text);
      } catch (const ConfigError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    const std::string k = err("mode=lsm\nkappa=-1");
    CHECK(k.find("kappa") != std::string::npos);
    CHECK(k.find("line 2") != std::string::npos);
    CHECK(err("mode=lsm\nfrobnicate=1").find("frobnicate") != std::string::npos);
    CHECK(err("mode=lsm\nN=abc").find("'N'") != std::string::npos);
    CHECK(err("mode=lsm\nN=31").find("'N'") != std::string::npos);
    CHECK(err("mode=lsm\nshape=kite").find("shape") != std::string::npos);
    CHECK(err("shape=apple").find("mode") != std::string::npos);
    CHECK(err("mode=lsm\nn=100").find("'n'") != std::string::npos);
    CHECK(err("mode=lsm\nalpha=0").find("alpha") != std::string::npos);
  }

  TEST_CASE("duplicate keys warn and the last value wins") {
    const auto s = parse_scenario("mode=lsm\nkappa=1\n# comment\nkappa=2 # trailing\n");
    CHECK(s.kappa == 2.0);
    REQUIRE(s.warnings.size() == 1u);
    CHECK(s.warnings[0].find("kappa") != std::string::npos);
  }

  TEST_CASE("manifest reparses to the same scenario") {
    auto s = parse_scenario("mode=esm\nshape=peach\ncenter=-1.5,1.5\nkappa_min=pi\nkappa_max=4*pi\nL=5\nR=1\n"
                            "directions=0,pi/5\nseed=42\ndelta=0.01\noutput=x/y");
    const std::string text = manifest_text(s, {{"z_star", "0 0"}});
    CHECK(text.rfind("#bhman v1\n", 0) == 0);
    const auto t = parse_scenario(text);
    CHECK(manifest_text(t, {{"z_star", "0 0"}}) == text);
    CHECK(t.center == s.center);
    CHECK(t.kappas() == s.kappas());
    CHECK(t.seed == 42u);
  }

  TEST_CASE("shipped scenarios parse") {
    for (const auto& entry : fs::directory_iterator(fs::path(BHS_SOURCE_DIR) / "scenarios")) {
      CAPTURE(entry.path().string());
      CHECK_NOTHROW(load_scenario(entry.path()));
    }
  }

  TEST_CASE("runs are byte-identical") {
    const fs::path dir = scratch("det");
    fs::remove_all(dir);
    auto s = parse_scenario("mode=lsm\nshape=peanut\nkappa=2*pi\nN=16\nn=64\ndelta=0.05\nseed=9\nnx=12\nny=12");
    std::ostringstream out, err;
    s.output = (dir / "a").string();
    REQUIRE(run(s, out, err) == 0);
    s.output = (dir / "b").string();
    REQUIRE(run(s, out, err) == 0);
    for (const char* ext : {".bhind", ".mask", ".pgm"}) CHECK(slurp(dir / (std::string("a") + ext)) == slurp(dir / (std::string("b") + ext)));
    // Manifests differ only in the output line.
    CHECK(slurp(dir / "a.manifest").size() == slurp(dir / "b.manifest").size());

    auto e = parse_scenario("mode=esm\nshape=apple\nN=16\nn=64\nR=0.5\ndelta=0.02\nseed=5\nnx=9\nny=9");
    e.output = (dir / "e1").string();
    REQUIRE(run(e, out, err) == 0);
    e.output = (dir / "e2").string();
    REQUIRE(run(e, out, err) == 0);
    for (const char* ext : {".bhind", ".pgm", ".loc"}) CHECK(slurp(dir / (std::string("e1") + ext)) == slurp(dir / (std::string("e2") + ext)));
  }

  TEST_CASE("forward run reports reciprocity and verify reads it back") {
    const fs::path dir = scratch("fwd");
    auto s = parse_scenario("mode=forward\nshape=apple\nkappa=pi\nN=32\nn=128");
    s.output = (dir / "apple").string();
    std::ostringstream out, err;
    REQUIRE(run(s, out, err) == 0);
    const std::string man = slurp(dir / "apple.manifest");
    const auto pos = man.find("# reciprocity_residual=");
    REQUIRE(pos != std::string::npos);
    const double res = std::stod(man.substr(pos + 23));
    CHECK(res < 1e-4);

    std::ostringstream vout, verr;
    CHECK(verify(dir / "apple.bhff", vout, verr) == 0);
    CHECK(vout.str().find("N: 32") != std::string::npos);
    CHECK(vout.str().find("reciprocity_residual: ") != std::string::npos);
    std::ostringstream bout, berr;
    CHECK(verify(dir / "missing.bhff", bout, berr) != 0);
  }

  TEST_CASE("lsm run on disk data reports a centred mask") {
    const fs::path dir = scratch("lsm");
    auto s = parse_scenario("mode=lsm\nshape=circle\ncenter=0.3,-0.2\nkappa=2*pi\nnx=48\nny=48");
    s.output = (dir / "disk").string();
    std::ostringstream out, err;
    REQUIRE(run(s, out, err) == 0);
    const std::string man = slurp(dir / "disk.manifest");
    const auto pos = man.find("# mask_centroid=");
    REQUIRE(pos != std::string::npos);
    std::istringstream cs(man.substr(pos + 16));
    double cx = 0, cy = 0;
    cs >> cx >> cy;
    CHECK(std::hypot(cx - 0.3, cy + 0.2) < 0.1);
    const auto map = read_indicator(dir / "disk.bhind");
    CHECK(map.grid.nx() == 48);
  }

  TEST_CASE("command-line front end") {
    const fs::path dir = scratch("cli");
    fs::create_directories(dir);
    const fs::path scn = dir / "f.scn";
    std::ofstream(scn) << "mode=forward\nshape=peanut\nkappa=pi\nN=8\nn=32\n";
    const std::string exe = BHS_CLI_PATH;
    const std::string base = "\"" + exe + "\" ";
    CHECK(std::system((base + "forward \"" + scn.string() + "\" -q -o \"" + (dir / "p").string() + "\"").c_str()) == 0);
    CHECK(fs::exists(dir / "p.bhff"));
    CHECK(std::system((base + "verify \"" + (dir / "p.bhff").string() + "\" > /dev/null").c_str()) == 0);
    // Mode mismatch and bad config are usage errors.
    CHECK(std::system((base + "lsm \"" + scn.string() + "\" -q 2> /dev/null").c_str()) != 0);
    std::ofstream(dir / "bad.scn") << "mode=forward\nkappa=-1\n";
    CHECK(std::system((base + "forward \"" + (dir / "bad.scn").string() + "\" -q 2> /dev/null").c_str()) != 0);
  }
}
