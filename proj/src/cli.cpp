#include "murec/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "murec/kernels.hpp"
#include "murec/png_io.hpp"
#include "murec/report.hpp"

namespace murec {

void RunConfig::validate() const {
  // mu is ignored by the minimal-surface density (fixed exponent 3)
  if (density_kind == DensityKind::MuFamily && !(mu > 1.0))
    throw ConfigError("--mu must be > 1");
  if (data_kind == DataTermKind::Quadratic && !(lambda > 0.0))
    throw ConfigError("--lambda must be > 0 for the quadratic data term");
  if (data_kind == DataTermKind::LinearGrowth && !(beta > 0.0))
    throw ConfigError("--beta must be > 0 for the linear-growth data term");
  if (!(spacing > 0.0)) throw ConfigError("--spacing must be > 0");
  if (input_path.empty()) throw ConfigError("--input is required");
  if (output_path.empty()) throw ConfigError("--output is required");
  try {
    solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Density RunConfig::make_density() const {
  return density_kind == DensityKind::MuFamily ? Density::mu_family(mu)
                                               : Density::minimal_surface();
}

DataTermProfile RunConfig::make_data_term() const {
  return data_kind == DataTermKind::Quadratic
             ? DataTermProfile::quadratic(lambda)
             : DataTermProfile::linear_growth(beta);
}

std::string RunConfig::resolved_report_path() const {
  return report_path.empty() ? output_path + ".report.json" : report_path;
}

IngestResult ingest(const std::string& input_path, const std::string& mask_path) {
  png::PngImage img = png::read(input_path);
  const double scale = 1.0 / img.max_value();

  ImageField field(img.width, img.height, img.channels);
  for (int c = 0; c < img.channels; ++c) {
    double* plane = field.plane(c);
    for (std::size_t i = 0; i < field.pixels(); ++i)
      plane[i] = img.samples[i * img.channels + c] * scale;
  }

  Mask mask(img.width, img.height);
  if (!mask_path.empty()) {
    png::PngImage m = png::read(mask_path);
    if (m.width != img.width || m.height != img.height)
      throw ConfigError("mask dimensions do not match the input image");
    for (int y = 0; y < m.height; ++y)
      for (int x = 0; x < m.width; ++x) {
        std::size_t idx = (static_cast<std::size_t>(y) * m.width + x) * m.channels;
        mask.set(x, y, m.samples[idx] != 0);
      }
    try {
      mask.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return {std::move(field), std::move(mask), img.bit_depth};
}

void write_image(const std::string& path, const ImageField& u, int bit_depth) {
  png::PngImage img;
  img.width = u.width();
  img.height = u.height();
  img.channels = u.channels();
  img.bit_depth = bit_depth;
  const double maxval = img.max_value();
  img.samples.resize(u.pixels() * u.channels());
  for (int c = 0; c < u.channels(); ++c) {
    const double* plane = u.plane(c);
    for (std::size_t i = 0; i < u.pixels(); ++i) {
      double v = std::clamp(plane[i], 0.0, 1.0);
      img.samples[i * u.channels() + c] =
          static_cast<std::uint16_t>(std::llround(v * maxval));
    }
  }
  png::write(path, img);
}

namespace {

void write_restore_report(const std::string& path, const RunConfig& cfg,
                          const IngestResult& in, const SolverTrace& trace,
                          const EnergyBreakdown& final_energy, double nu1,
                          const std::optional<DiagnosticsReport>& diag) {
  JsonWriter w;
  w.begin_object();

  w.key("config").begin_object();
  w.kv("density", density_name(cfg.density_kind));
  w.kv("mu", cfg.density_kind == DensityKind::MinimalSurface ? 3.0 : cfg.mu);
  w.kv("data_term", data_term_name(cfg.data_kind));
  w.key("lambda");
  if (cfg.data_kind == DataTermKind::Quadratic) w.value(cfg.lambda); else w.null();
  w.key("beta");
  if (cfg.data_kind == DataTermKind::LinearGrowth) w.value(cfg.beta); else w.null();
  w.kv("spacing", cfg.spacing);
  w.kv("delta_start", cfg.solver.delta_start);
  w.kv("delta_factor", cfg.solver.delta_factor);
  w.kv("delta_steps", cfg.solver.delta_steps);
  w.kv("grad_tol", cfg.solver.resolved_grad_tol(in.image.pixels()));
  w.kv("max_iters", cfg.solver.max_iters);
  w.kv("sufficient_decrease", cfg.solver.sufficient_decrease);
  w.kv("backtrack_factor", cfg.solver.backtrack_factor);
  w.kv("deterministic", cfg.solver.deterministic);
  w.kv("seed", static_cast<long long>(cfg.solver.seed));
  w.kv("kernel_backend",
       cfg.solver.deterministic ? "scalar" : kernels::table().name);
  w.kv("input", cfg.input_path);
  w.key("mask");
  if (!cfg.mask_path.empty()) w.value(cfg.mask_path); else w.null();
  w.kv("output", cfg.output_path);
  w.end_object();

  w.key("image").begin_object();
  w.kv("width", in.image.width());
  w.kv("height", in.image.height());
  w.kv("channels", in.image.channels());
  w.kv("bit_depth", in.bit_depth);
  w.kv("masked_pixels", static_cast<long long>(in.mask.masked_count()));
  w.end_object();

  w.key("result").begin_object();
  w.kv("termination", termination_name(trace.termination));
  w.kv("total_iterations", trace.total_iterations);
  w.key("energy");
  write_energy(w, final_energy);
  w.kv("max_dual_norm", trace.max_dual_norm);
  w.kv("nu1", nu1);
  w.end_object();

  write_trace(w, trace);

  w.key("diagnostics");
  write_diagnostics(w, diag);

  w.end_object();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << w.str() << '\n';
  if (!out) throw IoError("failed to write '" + path + "'");
}

}  // namespace

int run_restore(const RunConfig& cfg) {
  try {
    cfg.validate();

    IngestResult in = ingest(cfg.input_path, cfg.mask_path);
    ImageField u0(in.image.width(), in.image.height(), in.image.channels(),
                  cfg.spacing);
    std::copy(in.image.values().begin(), in.image.values().end(),
              u0.values().begin());
    Problem problem(cfg.make_density(), cfg.make_data_term(), std::move(u0),
                    in.mask);

    auto [u, trace] = continuation(problem, cfg.solver);

    std::optional<DiagnosticsReport> diag;
    if (cfg.diagnostics) {
      const double p_tail = std::max(1.0, 4.0 - problem.density.mu());
      const double p_list[] = {1.0, 2.0, p_tail};
      diag = run_diagnostics(problem, cfg.solver, u, p_list);
    }

    write_image(cfg.output_path, u, in.bit_depth);
    write_restore_report(cfg.resolved_report_path(), cfg, in, trace,
                         trace.iterations.empty() ? EnergyBreakdown{}
                                                  : trace.iterations.back().energy,
                         problem.density.constants().nu1, diag);
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cout << error_json(kExitConfig, "validation", e.what()) << std::endl;
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cout << error_json(kExitConfig, "validation", e.what()) << std::endl;
    return kExitConfig;
  } catch (const IoError& e) {
    std::cout << error_json(kExitIo, "io", e.what()) << std::endl;
    return kExitIo;
  } catch (const SolverError& e) {
    std::cout << error_json(kExitSolver, "solver", e.what()) << std::endl;
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cout << error_json(kExitSolver, "internal", e.what()) << std::endl;
    return kExitSolver;
  }
}

}  // namespace murec
