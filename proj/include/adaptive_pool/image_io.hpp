#pragma once

#include <filesystem>

#include "adaptive_pool/image.hpp"

namespace adaptive_pool {

/// Reads an 8-bit binary PGM (P5), PPM (P6) or PNG (gray, gray+alpha, RGB;
/// RGBA is flattened to RGB). Intensities are mapped to [0, 1] as
/// value / maxval. Deeper files are rejected with IoError.
Image load_image(const std::filesystem::path& path);

/// Writes by extension: .pgm (1 channel), .ppm (3 channels) or .png
/// (1-3 channels). Values are clamped to [0, 1] and stored as
/// round-half-up(v * 255).
void save_image(const Image& image, const std::filesystem::path& path);

}  // namespace adaptive_pool
