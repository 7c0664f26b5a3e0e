#include "murec/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

namespace murec::png {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

PngImage read(const std::string& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open '" + path + "' for reading");

  png_structp pngp =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!pngp) throw IoError("libpng initialization failed");
  png_infop infop = png_create_info_struct(pngp);
  if (!infop) {
    png_destroy_read_struct(&pngp, nullptr, nullptr);
    throw IoError("libpng initialization failed");
  }

  PngImage img;
  std::vector<std::uint8_t> bytes;
  std::vector<png_bytep> row_ptrs;

  // Declared above the jump target so the exception path destroys them.
  if (setjmp(png_jmpbuf(pngp))) {
    png_destroy_read_struct(&pngp, &infop, nullptr);
    throw IoError("failed to decode '" + path + "'");
  }

  png_init_io(pngp, file.get());
  png_read_info(pngp, infop);

  png_uint_32 width = 0, height = 0;
  int bit_depth = 0, color_type = 0;
  png_get_IHDR(pngp, infop, &width, &height, &bit_depth, &color_type, nullptr,
               nullptr, nullptr);

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(pngp);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
    png_set_expand_gray_1_2_4_to_8(pngp);
  // strip runs after the expand transforms, so tRNS-generated alpha goes too
  png_set_strip_alpha(pngp);
  png_read_update_info(pngp, infop);

  bit_depth = png_get_bit_depth(pngp, infop);
  const int channels = png_get_channels(pngp, infop);
  if ((channels != 1 && channels != 3) || (bit_depth != 8 && bit_depth != 16)) {
    png_destroy_read_struct(&pngp, &infop, nullptr);
    throw IoError("unsupported PNG layout in '" + path +
                  "' (need 8/16-bit grayscale or RGB)");
  }

  const std::size_t row_bytes = png_get_rowbytes(pngp, infop);
  bytes.resize(row_bytes * height);
  row_ptrs.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) row_ptrs[y] = bytes.data() + y * row_bytes;

  png_read_image(pngp, row_ptrs.data());
  png_read_end(pngp, nullptr);
  png_destroy_read_struct(&pngp, &infop, nullptr);

  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.channels = channels;
  img.bit_depth = bit_depth;
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  img.samples.resize(count);
  if (bit_depth == 8) {
    for (std::size_t i = 0; i < count; ++i) img.samples[i] = bytes[i];
  } else {
    for (std::size_t i = 0; i < count; ++i)  // network byte order
      img.samples[i] = static_cast<std::uint16_t>((bytes[2 * i] << 8) | bytes[2 * i + 1]);
  }
  return img;
}

void write(const std::string& path, const PngImage& img) {
  if (img.width < 1 || img.height < 1) throw IoError("empty image cannot be written");
  if ((img.channels != 1 && img.channels != 3) ||
      (img.bit_depth != 8 && img.bit_depth != 16))
    throw IoError("unsupported PNG layout (need 8/16-bit grayscale or RGB)");
  const std::size_t count =
      static_cast<std::size_t>(img.width) * img.height * img.channels;
  if (img.samples.size() != count) throw IoError("sample buffer size mismatch");

  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot open '" + path + "' for writing");

  png_structp pngp =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!pngp) throw IoError("libpng initialization failed");
  png_infop infop = png_create_info_struct(pngp);
  if (!infop) {
    png_destroy_write_struct(&pngp, nullptr);
    throw IoError("libpng initialization failed");
  }

  std::vector<std::uint8_t> bytes;
  std::vector<png_bytep> row_ptrs(img.height);
  if (img.bit_depth == 8) {
    bytes.resize(count);
    for (std::size_t i = 0; i < count; ++i)
      bytes[i] = static_cast<std::uint8_t>(img.samples[i]);
  } else {
    bytes.resize(count * 2);
    for (std::size_t i = 0; i < count; ++i) {
      bytes[2 * i] = static_cast<std::uint8_t>(img.samples[i] >> 8);
      bytes[2 * i + 1] = static_cast<std::uint8_t>(img.samples[i] & 0xff);
    }
  }
  const std::size_t stride =
      static_cast<std::size_t>(img.width) * img.channels * (img.bit_depth / 8);
  for (int y = 0; y < img.height; ++y) row_ptrs[y] = bytes.data() + y * stride;

  if (setjmp(png_jmpbuf(pngp))) {
    png_destroy_write_struct(&pngp, &infop);
    throw IoError("failed to encode '" + path + "'");
  }

  png_init_io(pngp, file.get());
  png_set_IHDR(pngp, infop, img.width, img.height, img.bit_depth,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(pngp, infop);
  png_write_image(pngp, row_ptrs.data());
  png_write_end(pngp, nullptr);
  png_destroy_write_struct(&pngp, &infop);
}

}  // namespace murec::png
