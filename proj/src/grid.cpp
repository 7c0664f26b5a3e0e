#include "murec/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "murec/kernels.hpp"

namespace murec {

namespace {

void check_dims(int width, int height, int channels, double spacing) {
  if (width < 1 || height < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (channels < 1) throw std::invalid_argument("channel count must be positive");
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
}

}  // namespace

ImageField::ImageField(int width, int height, int channels, double spacing)
    : width_(width), height_(height), channels_(channels), spacing_(spacing) {
  check_dims(width, height, channels, spacing);
  data_.assign(static_cast<std::size_t>(width) * height * channels, 0.0);
}

ImageField ImageField::constant(int width, int height, int channels,
                                double value, double spacing) {
  ImageField f(width, height, channels, spacing);
  std::fill(f.data_.begin(), f.data_.end(), value);
  return f;
}

bool ImageField::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double ImageField::pixel_norm(std::size_t pixel) const {
  double s = 0.0;
  for (int c = 0; c < channels_; ++c) {
    double v = plane(c)[pixel];
    s += v * v;
  }
  return std::sqrt(s);
}

GradientField::GradientField(int width, int height, int channels, double spacing)
    : width_(width), height_(height), channels_(channels), spacing_(spacing) {
  check_dims(width, height, channels, spacing);
  data_.assign(static_cast<std::size_t>(width) * height * channels * 2, 0.0);
}

double GradientField::pixel_norm(std::size_t pixel) const {
  double s = 0.0;
  for (int p = 0; p < planes(); ++p) {
    double v = plane(p)[pixel];
    s += v * v;
  }
  return std::sqrt(s);
}

double GradientField::max_pixel_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < pixels(); ++i) m = std::max(m, pixel_norm(i));
  return m;
}

Mask::Mask(int width, int height, bool in_region)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) throw std::invalid_argument("mask dimensions must be positive");
  in_d_.assign(static_cast<std::size_t>(width) * height, in_region ? 1 : 0);
}

std::size_t Mask::masked_count() const {
  std::size_t n = 0;
  for (std::uint8_t v : in_d_) n += v != 0;
  return n;
}

void Mask::validate() const {
  if (masked_count() == pixels())
    throw std::invalid_argument("inpainting region covers the whole domain");
}

GradientField gradient(const ImageField& u) {
  const auto& k = kernels::table();
  GradientField g(u.width(), u.height(), u.channels(), u.spacing());
  const double inv_h = 1.0 / u.spacing();
  const std::size_t w = static_cast<std::size_t>(u.width());
  const std::size_t h = static_cast<std::size_t>(u.height());
  for (int c = 0; c < u.channels(); ++c) {
    k.diff_x(g.dx_plane(c), u.plane(c), w, h, inv_h);
    k.diff_y(g.dy_plane(c), u.plane(c), w, h, inv_h);
  }
  return g;
}

ImageField divergence(const GradientField& q) {
  const auto& k = kernels::table();
  ImageField d(q.width(), q.height(), q.channels(), q.spacing());
  const double inv_h = 1.0 / q.spacing();
  const std::size_t w = static_cast<std::size_t>(q.width());
  const std::size_t h = static_cast<std::size_t>(q.height());
  for (int c = 0; c < q.channels(); ++c) {
    k.div_x_accum(d.plane(c), q.dx_plane(c), w, h, inv_h);
    k.div_y_accum(d.plane(c), q.dy_plane(c), w, h, inv_h);
  }
  return d;
}

void pixel_norms(const GradientField& q, std::vector<double>& out) {
  const auto& k = kernels::table();
  out.assign(q.pixels(), 0.0);
  for (int p = 0; p < q.planes(); ++p) k.accum_sq(out.data(), q.plane(p), q.pixels());
  k.sqrt_arr(out.data(), out.data(), q.pixels());
}

double masked_reduce(const ImageField& u, const ImageField& u0, const Mask& m,
                     const DataTermProfile& profile) {
  if (!u.same_shape(u0)) throw std::invalid_argument("field shape mismatch");
  if (m.width() != u.width() || m.height() != u.height())
    throw std::invalid_argument("mask shape mismatch");
  const double h2 = u.spacing() * u.spacing();
  double acc = 0.0;
  for (std::size_t i = 0; i < u.pixels(); ++i) {
    if (m.in_region(i)) continue;
    double s = 0.0;
    for (int c = 0; c < u.channels(); ++c) {
      double d = u.plane(c)[i] - u0.plane(c)[i];
      s += d * d;
    }
    acc += profile.value(std::sqrt(s));
  }
  return h2 * acc;
}

}  // namespace murec
