#ifndef MUREC_PNG_IO_HPP
#define MUREC_PNG_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace murec {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace png {

// Decoded image: interleaved samples, grayscale (channels = 1) or RGB
// (channels = 3), bit depth 8 or 16. Palette images are expanded, alpha is
// stripped, sub-byte gray depths are widened to 8.
struct PngImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  int bit_depth = 8;
  std::vector<std::uint16_t> samples;

  int max_value() const { return bit_depth == 16 ? 65535 : 255; }
};

PngImage read(const std::string& path);             // throws IoError
void write(const std::string& path, const PngImage& img);  // throws IoError

}  // namespace png
}  // namespace murec

#endif
