// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MSB_IMAGE_HPP_
#define MSB_IMAGE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace msb {

// 8-bit raster image, row-major, interleaved channels (1 = gray, 3 = RGB).
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 1;
  std::vector<std::uint8_t> pixels;

  std::uint8_t& at(std::size_t x, std::size_t y, std::size_t c) {
    return pixels[(y * width + x) * channels + c];
  }
  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c) const {
    return pixels[(y * width + x) * channels + c];
  }
  bool valid() const {
    return width > 0 && height > 0 &&
           pixels.size() == width * height * channels;
  }
};

Image make_image(std::size_t width, std::size_t height, std::size_t channels,
                 std::uint8_t fill = 0);

// PNG is the read/write format; JPEG is read-only. Decode failures throw
// DataError; use probe_image_size for the non-throwing filter path.
Image read_image(const std::string& path);
void write_png(const Image& img, const std::string& path);

// Reads just the header. Returns false when the file is missing or not a
// decodable PNG/JPEG.
bool probe_image_size(const std::string& path, std::size_t* width,
                      std::size_t* height);

}  // namespace msb

#endif  // MSB_IMAGE_HPP_
