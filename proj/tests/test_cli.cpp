#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "murec/cli.hpp"
#include "murec/png_io.hpp"
#include "helpers.hpp"

using namespace murec;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("murec-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

png::PngImage make_gradient_png(int w, int h, int channels, int bit_depth) {
  png::PngImage img;
  img.width = w;
  img.height = h;
  img.channels = channels;
  img.bit_depth = bit_depth;
  img.samples.resize(static_cast<std::size_t>(w) * h * channels);
  const int maxval = img.max_value();
  std::size_t i = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c)
        img.samples[i++] = static_cast<std::uint16_t>(
            ((x * 7 + y * 13 + c * 29) * 31) % (maxval + 1));
  return img;
}

png::PngImage make_mask_png(int w, int h, int period) {
  png::PngImage img;
  img.width = w;
  img.height = h;
  img.channels = 1;
  img.bit_depth = 8;
  img.samples.resize(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img.samples[static_cast<std::size_t>(y) * w + x] =
          (x + y) % period == 0 ? 255 : 0;
  return img;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("png round trip preserves samples at both depths") {
  TempDir tmp;
  for (int depth : {8, 16})
    for (int channels : {1, 3}) {
      png::PngImage img = make_gradient_png(7, 5, channels, depth);
      const std::string path = tmp.file("rt.png");
      png::write(path, img);
      png::PngImage back = png::read(path);
      CHECK(back.width == img.width);
      CHECK(back.height == img.height);
      CHECK(back.channels == channels);
      CHECK(back.bit_depth == depth);
      REQUIRE(back.samples.size() == img.samples.size());
      for (std::size_t i = 0; i < img.samples.size(); ++i)
        CHECK(back.samples[i] == img.samples[i]);
    }
}

TEST_CASE("ingest maps 8-bit extremes to 0 and 1") {
  TempDir tmp;
  png::PngImage img;
  img.width = 2;
  img.height = 2;
  img.channels = 1;
  img.bit_depth = 8;
  img.samples = {0, 255, 255, 0};
  png::write(tmp.file("bw.png"), img);
  IngestResult in = ingest(tmp.file("bw.png"));
  CHECK(in.image.at(0, 0, 0) == 0.0);
  CHECK(in.image.at(1, 0, 0) == 1.0);
  CHECK(in.image.at(0, 1, 0) == 1.0);
  CHECK(in.image.at(1, 1, 0) == 0.0);
}

TEST_CASE("ingest scales to [0,1] and write_image restores the file exactly") {
  TempDir tmp;
  for (int depth : {8, 16}) {
    png::PngImage img = make_gradient_png(6, 4, 1, depth);
    const std::string in_path = tmp.file("in.png");
    const std::string out_path = tmp.file("out.png");
    png::write(in_path, img);

    IngestResult in = ingest(in_path);
    CHECK(in.bit_depth == depth);
    CHECK(in.image.channels() == 1);
    for (double v : in.image.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(in.mask.masked_count() == 0);

    write_image(out_path, in.image, depth);
    png::PngImage back = png::read(out_path);
    for (std::size_t i = 0; i < img.samples.size(); ++i)
      CHECK(back.samples[i] == img.samples[i]);
  }
}

TEST_CASE("ingest applies the mask semantics") {
  TempDir tmp;
  png::PngImage img = make_gradient_png(6, 6, 3, 8);
  png::PngImage mask = make_mask_png(6, 6, 3);
  png::write(tmp.file("img.png"), img);
  png::write(tmp.file("mask.png"), mask);

  IngestResult in = ingest(tmp.file("img.png"), tmp.file("mask.png"));
  std::size_t expected = 0;
  for (std::size_t i = 0; i < mask.samples.size(); ++i) expected += mask.samples[i] != 0;
  CHECK(in.mask.masked_count() == expected);

  // full mask is rejected
  png::PngImage full = make_mask_png(6, 6, 1);
  png::write(tmp.file("full.png"), full);
  CHECK_THROWS_AS(ingest(tmp.file("img.png"), tmp.file("full.png")), ConfigError);

  // dimension mismatch is rejected
  png::PngImage small = make_mask_png(3, 3, 2);
  png::write(tmp.file("small.png"), small);
  CHECK_THROWS_AS(ingest(tmp.file("img.png"), tmp.file("small.png")), ConfigError);

  CHECK_THROWS_AS(ingest(tmp.file("missing.png")), IoError);
}

TEST_CASE("run_restore on constant input reproduces the input") {
  TempDir tmp;
  png::PngImage img;
  img.width = 5;
  img.height = 4;
  img.channels = 1;
  img.bit_depth = 8;
  img.samples.assign(20, 120);
  png::write(tmp.file("c.png"), img);

  RunConfig cfg;
  cfg.input_path = tmp.file("c.png");
  cfg.output_path = tmp.file("c-out.png");
  cfg.report_path = tmp.file("c-report.json");
  CHECK(run_restore(cfg) == kExitOk);

  png::PngImage out = png::read(tmp.file("c-out.png"));
  for (std::size_t i = 0; i < out.samples.size(); ++i)
    CHECK(out.samples[i] == 120);

  json rep = json::parse(slurp(tmp.file("c-report.json")));
  CHECK(rep["result"]["energy"]["total"].get<double>() == 0.0);
  CHECK(rep["result"]["termination"] == "stationary");
  CHECK(rep["diagnostics"].is_null());
  CHECK(rep["config"]["data_term"] == "quadratic");
  CHECK(rep["config"]["beta"].is_null());
  CHECK(rep["image"]["width"] == 5);
  CHECK(rep["stages"].size() == 4);
}

TEST_CASE("run_restore end to end with mask and diagnostics") {
  TempDir tmp;
  png::PngImage img = make_gradient_png(8, 8, 1, 8);
  png::PngImage mask = make_mask_png(8, 8, 2);
  png::write(tmp.file("in.png"), img);
  png::write(tmp.file("m.png"), mask);

  RunConfig cfg;
  cfg.input_path = tmp.file("in.png");
  cfg.mask_path = tmp.file("m.png");
  cfg.output_path = tmp.file("out.png");
  cfg.report_path = tmp.file("report.json");
  cfg.diagnostics = true;
  cfg.lambda = 10.0;
  CHECK(run_restore(cfg) == kExitOk);

  json rep = json::parse(slurp(tmp.file("report.json")));
  CHECK(rep["diagnostics"]["max_principle"]["pass"].get<bool>());
  CHECK(rep["diagnostics"]["uniqueness"]["pass"].get<bool>());
  CHECK(rep["diagnostics"]["dual_bound"]["pass"].get<bool>());
  CHECK(rep["result"]["max_dual_norm"].get<double>() <=
        rep["result"]["nu1"].get<double>() + 1e-12);
  CHECK(rep["trace"].size() > 4);
  // stage k_zero values are non-increasing
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& st : rep["stages"]) {
    double kz = st["k_zero"].get<double>();
    CHECK(kz <= prev + 1e-8 * (1.0 + std::fabs(kz)));
    prev = kz;
  }
}

TEST_CASE("run_restore exit codes") {
  TempDir tmp;
  RunConfig cfg;
  cfg.input_path = tmp.file("absent.png");
  cfg.output_path = tmp.file("x.png");
  CHECK(run_restore(cfg) == kExitIo);

  RunConfig bad;
  bad.input_path = tmp.file("absent.png");
  bad.output_path = tmp.file("x.png");
  bad.mu = 1.0;
  CHECK(run_restore(bad) == kExitConfig);

  RunConfig noout;
  noout.input_path = tmp.file("absent.png");
  CHECK(run_restore(noout) == kExitConfig);

  png::PngImage img = make_gradient_png(4, 4, 1, 8);
  png::write(tmp.file("ok.png"), img);
  RunConfig badlambda;
  badlambda.input_path = tmp.file("ok.png");
  badlambda.output_path = tmp.file("ok-out.png");
  badlambda.lambda = -2.0;
  CHECK(run_restore(badlambda) == kExitConfig);
}

TEST_CASE("report schema is stable across configurations") {
  TempDir tmp;
  png::PngImage img = make_gradient_png(5, 5, 1, 8);
  png::write(tmp.file("a.png"), img);

  auto keys_of = [](const json& j) {
    std::vector<std::string> k;
    for (auto it = j.begin(); it != j.end(); ++it) k.push_back(it.key());
    std::sort(k.begin(), k.end());
    return k;
  };

  RunConfig base;
  base.input_path = tmp.file("a.png");
  base.output_path = tmp.file("a-out.png");
  base.report_path = tmp.file("a-rep.json");
  REQUIRE(run_restore(base) == kExitOk);
  json r1 = json::parse(slurp(base.report_path));

  RunConfig other = base;
  other.data_kind = DataTermKind::LinearGrowth;
  other.beta = 0.5;
  other.density_kind = DensityKind::MinimalSurface;
  other.diagnostics = true;
  other.output_path = tmp.file("b-out.png");
  other.report_path = tmp.file("b-rep.json");
  REQUIRE(run_restore(other) == kExitOk);
  json r2 = json::parse(slurp(other.report_path));

  CHECK(keys_of(r1) == keys_of(r2));
  CHECK(keys_of(r1["config"]) == keys_of(r2["config"]));
  CHECK(keys_of(r1["result"]) == keys_of(r2["result"]));
  CHECK(r1["diagnostics"].is_null());
  CHECK_FALSE(r2["diagnostics"].is_null());
  // lambda/beta slots always exist; unused one is null
  CHECK(r1["config"]["beta"].is_null());
  CHECK(r2["config"]["lambda"].is_null());
}

TEST_CASE("deterministic runs are byte identical") {
  TempDir tmp;
  png::PngImage img = make_gradient_png(8, 6, 1, 8);
  png::PngImage mask = make_mask_png(8, 6, 3);
  png::write(tmp.file("in.png"), img);
  png::write(tmp.file("m.png"), mask);

  RunConfig cfg;
  cfg.input_path = tmp.file("in.png");
  cfg.mask_path = tmp.file("m.png");
  cfg.output_path = tmp.file("out.png");
  cfg.report_path = tmp.file("report.json");
  cfg.solver.deterministic = true;
  cfg.diagnostics = true;

  REQUIRE(run_restore(cfg) == kExitOk);
  const std::string first = slurp(cfg.output_path) + "\x01" + slurp(cfg.report_path);
  fs::remove(cfg.output_path);
  fs::remove(cfg.report_path);
  REQUIRE(run_restore(cfg) == kExitOk);
  const std::string second = slurp(cfg.output_path) + "\x01" + slurp(cfg.report_path);
  CHECK(first == second);
}
