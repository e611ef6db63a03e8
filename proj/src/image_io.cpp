#include "adaptive_pool/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "adaptive_pool/errors.hpp"

namespace adaptive_pool {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

std::uint8_t to_byte(double v) {
  const double clamped = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(clamped * 255.0 + 0.5));
}

// Interleaved 8-bit samples <-> planar doubles.
Image from_interleaved(const std::uint8_t* bytes, int width, int height, int channels,
                       double maxval) {
  Image image(width, height, channels);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) {
        const std::size_t n =
            (static_cast<std::size_t>(y) * width + x) * static_cast<std::size_t>(channels) + c;
        image.at(x, y, c) = bytes[n] / maxval;
      }
    }
  }
  return image;
}

std::vector<std::uint8_t> to_interleaved(const Image& image) {
  std::vector<std::uint8_t> bytes(image.size());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < image.channels(); ++c) {
        const std::size_t n = (static_cast<std::size_t>(y) * image.width() + x) *
                                  static_cast<std::size_t>(image.channels()) +
                              c;
        bytes[n] = to_byte(image.at(x, y, c));
      }
    }
  }
  return bytes;
}

class PnmReader {
 public:
  PnmReader(std::vector<char> data, std::string name) : data_(std::move(data)), name_(std::move(name)) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= data_.size() || !std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      fail("malformed header");
    }
    long value = 0;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      value = value * 10 + (data_[pos_++] - '0');
      if (value > 1'000'000'000L) fail("header value out of range");
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  const std::uint8_t* raster(std::size_t bytes) {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      fail("malformed header");
    }
    ++pos_;
    if (data_.size() - pos_ < bytes) fail("truncated raster");
    return reinterpret_cast<const std::uint8_t*>(data_.data() + pos_);
  }

  [[noreturn]] void fail(const std::string& why) const { throw IoError(name_ + ": " + why); }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::vector<char> data_;
  std::string name_;
  std::size_t pos_ = 2;
};

Image load_pnm(std::vector<char> data, const std::string& name) {
  const int channels = data[1] == '5' ? 1 : 3;
  PnmReader reader(std::move(data), name);
  const int width = reader.next_int();
  const int height = reader.next_int();
  const int maxval = reader.next_int();
  if (width < 1 || height < 1) reader.fail("invalid dimensions");
  if (maxval < 1) reader.fail("invalid maxval");
  if (maxval > 255) reader.fail("unsupported bit depth (maxval " + std::to_string(maxval) + ")");
  const std::size_t bytes = static_cast<std::size_t>(width) * height * channels;
  return from_interleaved(reader.raster(bytes), width, height, channels, maxval);
}

Image load_png(const std::filesystem::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_file(&png, path.c_str()) == 0) {
    throw IoError(path.string() + ": " + png.message);
  }
  if ((png.format & PNG_FORMAT_FLAG_LINEAR) != 0) {
    png_image_free(&png);
    throw IoError(path.string() + ": unsupported bit depth (16-bit PNG)");
  }
  int channels = 1;
  if ((png.format & PNG_FORMAT_FLAG_COLOR) != 0) {
    png.format = PNG_FORMAT_RGB;
    channels = 3;
  } else if ((png.format & PNG_FORMAT_FLAG_ALPHA) != 0) {
    png.format = PNG_FORMAT_GA;
    channels = 2;
  } else {
    png.format = PNG_FORMAT_GRAY;
  }
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
  if (png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr) == 0) {
    const std::string message = png.message;
    png_image_free(&png);
    throw IoError(path.string() + ": " + message);
  }
  return from_interleaved(buffer.data(), static_cast<int>(png.width),
                          static_cast<int>(png.height), channels, 255.0);
}

void save_pnm(const Image& image, const std::filesystem::path& path, char magic) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << 'P' << magic << '\n' << image.width() << ' ' << image.height() << "\n255\n";
  const auto bytes = to_interleaved(image);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path.string() + ": write failed");
}

void save_png(const Image& image, const std::filesystem::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = image.channels() == 1   ? PNG_FORMAT_GRAY
               : image.channels() == 2 ? PNG_FORMAT_GA
                                       : PNG_FORMAT_RGB;
  const auto bytes = to_interleaved(image);
  if (png_image_write_to_file(&png, path.c_str(), 0, bytes.data(), 0, nullptr) == 0) {
    throw IoError(path.string() + ": " + png.message);
  }
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open");
  std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() >= 8 && static_cast<unsigned char>(data[0]) == 0x89 && data[1] == 'P' &&
      data[2] == 'N' && data[3] == 'G') {
    return load_png(path);
  }
  if (data.size() >= 2 && data[0] == 'P' && (data[1] == '5' || data[1] == '6')) {
    return load_pnm(std::move(data), path.string());
  }
  throw IoError(path.string() + ": unsupported format (expected binary PGM/PPM or PNG)");
}

void save_image(const Image& image, const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") {
    if (image.channels() != 1) throw IoError(path.string() + ": PGM needs a single channel");
    save_pnm(image, path, '5');
  } else if (ext == ".ppm") {
    if (image.channels() != 3) throw IoError(path.string() + ": PPM needs three channels");
    save_pnm(image, path, '6');
  } else if (ext == ".png") {
    if (image.channels() > 3) throw IoError(path.string() + ": PNG output supports 1-3 channels");
    save_png(image, path);
  } else {
    throw IoError(path.string() + ": unknown image extension '" + ext + "'");
  }
}

}  // namespace adaptive_pool
