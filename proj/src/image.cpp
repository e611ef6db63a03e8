#include "adaptive_pool/image.hpp"

#include <string>

#include "adaptive_pool/errors.hpp"

namespace adaptive_pool {

namespace {

std::size_t checked_size(int width, int height, int channels) {
  if (width < 1 || height < 1 || channels < 1) {
    throw ArgumentError("array dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height) + "x" + std::to_string(channels));
  }
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
         static_cast<std::size_t>(channels);
}

}  // namespace

Planes::Planes(int width, int height, int channels, double fill)
    : width_(width),
      height_(height),
      channels_(channels),
      data_(checked_size(width, height, channels), fill) {}

Planes::Planes(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  if (data_.size() != checked_size(width, height, channels)) {
    throw DimensionError("data length " + std::to_string(data_.size()) +
                         " does not match dimensions");
  }
}

}  // namespace adaptive_pool
