#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace adaptive_pool {

/// Planar multi-channel array of doubles: channel-major, then row-major.
/// Rows are contiguous so pooling can hand whole spans to the SIMD kernels.
class Planes {
 public:
  Planes() = default;
  Planes(int width, int height, int channels, double fill = 0.0);
  Planes(int width, int height, int channels, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }

  double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  std::span<double> row(int y, int c = 0) {
    return std::span<double>(data_).subspan(index(0, y, c), static_cast<std::size_t>(width_));
  }
  std::span<const double> row(int y, int c = 0) const {
    return std::span<const double>(data_).subspan(index(0, y, c),
                                                  static_cast<std::size_t>(width_));
  }
  std::span<const double> plane(int c) const {
    return std::span<const double>(data_).subspan(index(0, 0, c), plane_size());
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool same_shape(const Planes& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const Planes&, const Planes&) = default;

 private:
  std::size_t plane_size() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  std::size_t index(int x, int y, int c) const {
    return static_cast<std::size_t>(c) * plane_size() +
           static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Pixel intensities (or image-shaped gradients). File-backed images hold
/// values in [0, 1]; internal tensors may hold any real.
class Image : public Planes {
 public:
  using Planes::Planes;
};

/// K_cols x K_rows x channels output of pooling (or gradients of that shape).
/// at(i, j, c) addresses column cell i, row cell j.
class PooledMap : public Planes {
 public:
  using Planes::Planes;
};

}  // namespace adaptive_pool
