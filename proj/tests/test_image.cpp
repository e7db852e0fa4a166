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

#include <cstdio>

#include <doctest.h>
#include <jpeglib.h>

#include "msb/image.hpp"
#include "msb/rng.hpp"
#include "msb/util.hpp"
#include "support/helpers.hpp"

using namespace msb;
using msb::testing::TempDir;

namespace {

Image noise_image(std::size_t w, std::size_t h, std::size_t channels,
                  std::uint64_t seed) {
  Image img = make_image(w, h, channels);
  Rng rng(seed);
  for (auto& p : img.pixels)
    p = static_cast<std::uint8_t>(rng.next_below(256));
  return img;
}

void write_jpeg(const Image& img, const std::string& path) {
  jpeg_compress_struct cinfo;
  jpeg_error_mgr jerr;
  cinfo.err = jpeg_std_error(&jerr);
  jpeg_create_compress(&cinfo);
  FILE* f = std::fopen(path.c_str(), "wb");
  REQUIRE(f != nullptr);
  jpeg_stdio_dest(&cinfo, f);
  cinfo.image_width = static_cast<JDIMENSION>(img.width);
  cinfo.image_height = static_cast<JDIMENSION>(img.height);
  cinfo.input_components = static_cast<int>(img.channels);
  cinfo.in_color_space = img.channels == 3 ? JCS_RGB : JCS_GRAYSCALE;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, 90, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    auto* row = const_cast<std::uint8_t*>(
        &img.pixels[cinfo.next_scanline * img.width * img.channels]);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  std::fclose(f);
}

}  // namespace

TEST_CASE("png round trip, gray and rgb") {
  TempDir dir("msb-png");
  for (std::size_t channels : {1UL, 3UL}) {
    Image img = noise_image(37, 23, channels, 1000 + channels);
    const std::string path = dir.file("img" + std::to_string(channels) + ".png");
    write_png(img, path);
    Image back = read_image(path);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.channels == img.channels);
    CHECK(back.pixels == img.pixels);
  }
}

TEST_CASE("probe_image_size reads only the header") {
  TempDir dir("msb-probe");
  Image img = noise_image(224, 224, 3, 2);
  write_png(img, dir.file("big.png"));
  std::size_t w = 0, h = 0;
  CHECK(probe_image_size(dir.file("big.png"), &w, &h));
  CHECK(w == 224);
  CHECK(h == 224);

  CHECK_FALSE(probe_image_size(dir.file("missing.png"), &w, &h));
  write_file(dir.file("garbage.png"), "this is not an image at all");
  CHECK_FALSE(probe_image_size(dir.file("garbage.png"), &w, &h));
}

TEST_CASE("decode failures throw DataError") {
  TempDir dir("msb-bad");
  write_file(dir.file("corrupt.png"), "\x89PNG\r\n\x1a\nbroken");
  CHECK_THROWS_AS(read_image(dir.file("corrupt.png")), DataError);
  CHECK_THROWS_AS(read_image(dir.file("nonexistent.png")), DataError);
}

TEST_CASE("jpeg decode") {
  TempDir dir("msb-jpeg");
  Image img = make_image(64, 48, 3, 128);
  write_jpeg(img, dir.file("img.jpg"));
  Image back = read_image(dir.file("img.jpg"));
  CHECK(back.width == 64);
  CHECK(back.height == 48);
  CHECK(back.channels == 3);
  // Lossy codec: the constant field should survive almost exactly.
  CHECK(std::abs(static_cast<int>(back.at(10, 10, 0)) - 128) <= 2);

  std::size_t w = 0, h = 0;
  CHECK(probe_image_size(dir.file("img.jpg"), &w, &h));
  CHECK(w == 64);
  CHECK(h == 48);
}
