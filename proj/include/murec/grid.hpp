#ifndef MUREC_GRID_HPP
#define MUREC_GRID_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "murec/density.hpp"

// Discrete rectangular image domain. Fields store one contiguous row-major
// plane per channel; gradients store the x-difference planes of all channels
// followed by the y-difference planes. Forward differences with homogeneous
// Neumann convention: stencils that leave the grid produce zeros, and
// divergence() is the exact negative adjoint of gradient().

namespace murec {

class ImageField {
 public:
  ImageField(int width, int height, int channels, double spacing = 1.0);
  static ImageField constant(int width, int height, int channels, double value,
                             double spacing = 1.0);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  double spacing() const { return spacing_; }
  std::size_t pixels() const { return static_cast<std::size_t>(width_) * height_; }
  std::size_t size() const { return data_.size(); }

  double* plane(int c) { return data_.data() + static_cast<std::size_t>(c) * pixels(); }
  const double* plane(int c) const {
    return data_.data() + static_cast<std::size_t>(c) * pixels();
  }
  double& at(int x, int y, int c) { return plane(c)[static_cast<std::size_t>(y) * width_ + x]; }
  double at(int x, int y, int c) const {
    return plane(c)[static_cast<std::size_t>(y) * width_ + x];
  }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool same_shape(const ImageField& o) const {
    return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
  }
  bool all_finite() const;
  // Euclidean norm across channels at one pixel.
  double pixel_norm(std::size_t pixel) const;

 private:
  int width_, height_, channels_;
  double spacing_;
  std::vector<double> data_;
};

class GradientField {
 public:
  GradientField(int width, int height, int channels, double spacing = 1.0);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  double spacing() const { return spacing_; }
  std::size_t pixels() const { return static_cast<std::size_t>(width_) * height_; }
  std::size_t size() const { return data_.size(); }
  int planes() const { return 2 * channels_; }

  double* dx_plane(int c) { return data_.data() + static_cast<std::size_t>(c) * pixels(); }
  double* dy_plane(int c) {
    return data_.data() + static_cast<std::size_t>(channels_ + c) * pixels();
  }
  const double* dx_plane(int c) const {
    return data_.data() + static_cast<std::size_t>(c) * pixels();
  }
  const double* dy_plane(int c) const {
    return data_.data() + static_cast<std::size_t>(channels_ + c) * pixels();
  }
  double* plane(int p) { return data_.data() + static_cast<std::size_t>(p) * pixels(); }
  const double* plane(int p) const {
    return data_.data() + static_cast<std::size_t>(p) * pixels();
  }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool same_shape(const GradientField& o) const {
    return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
  }
  // Frobenius norm over the 2*channels entries at one pixel.
  double pixel_norm(std::size_t pixel) const;
  double max_pixel_norm() const;

 private:
  int width_, height_, channels_;
  double spacing_;
  std::vector<double> data_;
};

// Inpainting region D as a per-pixel flag (true = pixel lies in D, i.e. the
// datum is missing there). A usable mask must leave at least one pixel
// observed; validate() enforces that.
class Mask {
 public:
  Mask(int width, int height, bool in_region = false);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixels() const { return static_cast<std::size_t>(width_) * height_; }

  bool in_region(std::size_t pixel) const { return in_d_[pixel] != 0; }
  bool in_region(int x, int y) const {
    return in_d_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool in_region) {
    in_d_[static_cast<std::size_t>(y) * width_ + x] = in_region ? 1 : 0;
  }

  std::size_t masked_count() const;
  std::size_t observed_count() const { return pixels() - masked_count(); }
  bool empty() const { return masked_count() == 0; }
  // Throws std::invalid_argument if every pixel is masked.
  void validate() const;

  const std::uint8_t* data() const { return in_d_.data(); }

 private:
  int width_, height_;
  std::vector<std::uint8_t> in_d_;
};

// Forward-difference gradient, (u[x+1,y]-u[x,y])/h and (u[x,y+1]-u[x,y])/h,
// zero where the stencil leaves the grid.
GradientField gradient(const ImageField& u);

// Exact negative adjoint: <gradient(u), q> = -<u, divergence(q)> for all u, q.
ImageField divergence(const GradientField& q);

// Per-pixel Frobenius norms |q| into out (resized to pixel count).
void pixel_norms(const GradientField& q, std::vector<double>& out);

// h^2-weighted fidelity sum over observed pixels:
//   sum_{x not in D} h^2 * profile.value(|u(x) - u0(x)|)
double masked_reduce(const ImageField& u, const ImageField& u0, const Mask& m,
                     const DataTermProfile& profile);

}  // namespace murec

#endif
