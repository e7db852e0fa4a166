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

#include "msb/image_augment.hpp"

#include <algorithm>
#include <cmath>

#include "msb/errors.hpp"
#include "msb/rng.hpp"

namespace msb {
namespace {

std::uint8_t clamp_u8(double v) {
  return static_cast<std::uint8_t>(
      std::min(255.0, std::max(0.0, std::round(v))));
}

Image crop(const Image& img, double fraction, Rng& rng) {
  if (fraction < 0.7 || fraction > 1.0)
    throw ValidationError("crop fraction outside [0.7, 1.0]");
  if (img.width < kMinCropInputSide || img.height < kMinCropInputSide)
    throw CapacityError("image too small to crop");
  const double side = std::sqrt(fraction);
  // ceil keeps the retained area at or above the requested fraction.
  const std::size_t cw = std::min(
      img.width,
      static_cast<std::size_t>(std::ceil(side * static_cast<double>(img.width))));
  const std::size_t ch = std::min(
      img.height, static_cast<std::size_t>(
                      std::ceil(side * static_cast<double>(img.height))));
  const std::size_t x0 =
      img.width == cw ? 0 : rng.next_below(img.width - cw + 1);
  const std::size_t y0 =
      img.height == ch ? 0 : rng.next_below(img.height - ch + 1);
  Image out = make_image(cw, ch, img.channels);
  for (std::size_t y = 0; y < ch; ++y)
    for (std::size_t x = 0; x < cw; ++x)
      for (std::size_t c = 0; c < img.channels; ++c)
        out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
  return out;
}

std::size_t reflect(long i, std::size_t n) {
  const long last = static_cast<long>(n) - 1;
  if (i < 0) i = -i;
  if (i > last) i = 2 * last - i;
  return static_cast<std::size_t>(std::clamp(i, 0L, last));
}

Image gaussian_blur(const Image& img, double sigma) {
  if (sigma < 0.5 || sigma > 3.0)
    throw ValidationError("blur sigma outside [0.5, 3.0]");
  // Kernel truncated at 3 sigma.
  const long radius = static_cast<long>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (long i = -radius; i <= radius; ++i) {
    kernel[i + radius] =
        std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  // Horizontal pass into doubles, vertical pass back to bytes.
  std::vector<double> tmp(img.pixels.size());
  for (std::size_t y = 0; y < img.height; ++y)
    for (std::size_t x = 0; x < img.width; ++x)
      for (std::size_t c = 0; c < img.channels; ++c) {
        double acc = 0.0;
        for (long k = -radius; k <= radius; ++k)
          acc += kernel[k + radius] *
                 img.at(reflect(static_cast<long>(x) + k, img.width), y, c);
        tmp[(y * img.width + x) * img.channels + c] = acc;
      }
  Image out = make_image(img.width, img.height, img.channels);
  for (std::size_t y = 0; y < img.height; ++y)
    for (std::size_t x = 0; x < img.width; ++x)
      for (std::size_t c = 0; c < img.channels; ++c) {
        double acc = 0.0;
        for (long k = -radius; k <= radius; ++k) {
          const std::size_t yy = reflect(static_cast<long>(y) + k, img.height);
          acc += kernel[k + radius] *
                 tmp[(yy * img.width + x) * img.channels + c];
        }
        out.at(x, y, c) = clamp_u8(acc);
      }
  return out;
}

Image gaussian_noise(const Image& img, double sigma, Rng& rng) {
  if (sigma < 0.0 || sigma > 20.0)
    throw ValidationError("noise sigma outside [0, 20]");
  if (sigma == 0.0) return img;
  Image out = img;
  for (auto& p : out.pixels)
    p = clamp_u8(static_cast<double>(p) + sigma * rng.next_gaussian());
  return out;
}

Image flip(const Image& img, bool vertical) {
  Image out = make_image(img.width, img.height, img.channels);
  for (std::size_t y = 0; y < img.height; ++y)
    for (std::size_t x = 0; x < img.width; ++x)
      for (std::size_t c = 0; c < img.channels; ++c) {
        const std::size_t sx = vertical ? x : img.width - 1 - x;
        const std::size_t sy = vertical ? img.height - 1 - y : y;
        out.at(x, y, c) = img.at(sx, sy, c);
      }
  return out;
}

Image rotate(const Image& img, int degrees) {
  if (degrees != 90 && degrees != 180 && degrees != 270)
    throw ValidationError("rotation must be 90, 180 or 270 degrees");
  const bool swap = degrees != 180;
  Image out = make_image(swap ? img.height : img.width,
                         swap ? img.width : img.height, img.channels);
  for (std::size_t y = 0; y < img.height; ++y)
    for (std::size_t x = 0; x < img.width; ++x)
      for (std::size_t c = 0; c < img.channels; ++c) {
        std::size_t nx, ny;
        if (degrees == 90) {  // clockwise
          nx = img.height - 1 - y;
          ny = x;
        } else if (degrees == 180) {
          nx = img.width - 1 - x;
          ny = img.height - 1 - y;
        } else {
          nx = y;
          ny = img.width - 1 - x;
        }
        out.at(nx, ny, c) = img.at(x, y, c);
      }
  return out;
}

// Classic column-encoded 5x7 glyphs, '0'-'9' then 'A'-'Z'.
constexpr unsigned char kFont5x7[36][5] = {
    {0x3E, 0x51, 0x49, 0x45, 0x3E}, {0x00, 0x42, 0x7F, 0x40, 0x00},
    {0x42, 0x61, 0x51, 0x49, 0x46}, {0x21, 0x41, 0x45, 0x4B, 0x31},
    {0x18, 0x14, 0x12, 0x7F, 0x10}, {0x27, 0x45, 0x45, 0x45, 0x39},
    {0x3C, 0x4A, 0x49, 0x49, 0x30}, {0x01, 0x71, 0x09, 0x05, 0x03},
    {0x36, 0x49, 0x49, 0x49, 0x36}, {0x06, 0x49, 0x49, 0x29, 0x1E},
    {0x7E, 0x11, 0x11, 0x11, 0x7E}, {0x7F, 0x49, 0x49, 0x49, 0x36},
    {0x3E, 0x41, 0x41, 0x41, 0x22}, {0x7F, 0x41, 0x41, 0x22, 0x1C},
    {0x7F, 0x49, 0x49, 0x49, 0x41}, {0x7F, 0x09, 0x09, 0x09, 0x01},
    {0x3E, 0x41, 0x49, 0x49, 0x7A}, {0x7F, 0x08, 0x08, 0x08, 0x7F},
    {0x00, 0x41, 0x7F, 0x41, 0x00}, {0x20, 0x40, 0x41, 0x3F, 0x01},
    {0x7F, 0x08, 0x14, 0x22, 0x41}, {0x7F, 0x40, 0x40, 0x40, 0x40},
    {0x7F, 0x02, 0x0C, 0x02, 0x7F}, {0x7F, 0x04, 0x08, 0x10, 0x7F},
    {0x3E, 0x41, 0x41, 0x41, 0x3E}, {0x7F, 0x09, 0x09, 0x09, 0x06},
    {0x3E, 0x41, 0x51, 0x21, 0x5E}, {0x7F, 0x09, 0x19, 0x29, 0x46},
    {0x46, 0x49, 0x49, 0x49, 0x31}, {0x01, 0x01, 0x7F, 0x01, 0x01},
    {0x3F, 0x40, 0x40, 0x40, 0x3F}, {0x1F, 0x20, 0x40, 0x20, 0x1F},
    {0x3F, 0x40, 0x38, 0x40, 0x3F}, {0x63, 0x14, 0x08, 0x14, 0x63},
    {0x07, 0x08, 0x70, 0x08, 0x07}, {0x61, 0x51, 0x49, 0x45, 0x43}};

int glyph_index(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'Z') return 10 + (c - 'A');
  return -1;
}

Image overlay_text(const Image& img, double area_fraction, std::string text,
                   Rng& rng) {
  if (area_fraction < 0.0 || area_fraction > 0.10)
    throw ValidationError("overlay area fraction outside [0, 0.10]");
  const std::size_t total = img.width * img.height;
  // Glyph cell is 6x8 including spacing; occluded pixels per glyph are at
  // most the cell.
  const std::size_t cell = 6 * 8;
  const std::size_t budget =
      static_cast<std::size_t>(area_fraction * static_cast<double>(total));
  std::size_t max_chars = budget / cell;
  max_chars = std::min(max_chars, img.width >= 6 ? (img.width - 1) / 6
                                                 : static_cast<std::size_t>(0));
  if (max_chars == 0 || img.height < 8) return img;

  if (text.empty()) {
    static const char kCharset[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    const std::size_t n = 1 + rng.next_below(std::min<std::size_t>(8, max_chars));
    for (std::size_t i = 0; i < n; ++i)
      text.push_back(kCharset[rng.next_below(36)]);
  }
  if (text.size() > max_chars) text.resize(max_chars);

  const std::size_t tw = text.size() * 6;
  const std::size_t x0 = rng.next_below(img.width - tw + 1);
  const std::size_t y0 = rng.next_below(img.height - 8 + 1);
  const std::uint8_t shade = rng.next_below(2) == 0 ? 0 : 255;

  Image out = img;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const int g = glyph_index(text[i]);
    if (g < 0) continue;
    for (std::size_t col = 0; col < 5; ++col) {
      const unsigned char bits = kFont5x7[g][col];
      for (std::size_t row = 0; row < 7; ++row) {
        if ((bits >> row) & 1) {
          const std::size_t x = x0 + i * 6 + col;
          const std::size_t y = y0 + row;
          for (std::size_t c = 0; c < img.channels; ++c)
            out.at(x, y, c) = shade;
        }
      }
    }
  }
  return out;
}

Image overlay_object(const Image& img, double area_fraction, Rng& rng) {
  if (area_fraction < 0.0 || area_fraction > 0.10)
    throw ValidationError("overlay area fraction outside [0, 0.10]");
  const std::size_t total = img.width * img.height;
  const std::size_t budget =
      static_cast<std::size_t>(area_fraction * static_cast<double>(total));
  if (budget == 0) return img;

  // Rectangle with w*h <= budget.
  std::size_t w = 1 + rng.next_below(std::min(budget, img.width));
  std::size_t h = std::max<std::size_t>(1, budget / w);
  h = std::min(h, img.height);
  while (w * h > budget && w > 1) --w;
  if (w * h > budget) return img;

  const std::size_t x0 = rng.next_below(img.width - w + 1);
  const std::size_t y0 = rng.next_below(img.height - h + 1);
  std::uint8_t color[3] = {static_cast<std::uint8_t>(rng.next_below(256)),
                           static_cast<std::uint8_t>(rng.next_below(256)),
                           static_cast<std::uint8_t>(rng.next_below(256))};
  Image out = img;
  for (std::size_t y = y0; y < y0 + h; ++y)
    for (std::size_t x = x0; x < x0 + w; ++x)
      for (std::size_t c = 0; c < img.channels; ++c)
        out.at(x, y, c) = color[c % 3];
  return out;
}

}  // namespace

std::string to_string(MutationOp op) {
  switch (op) {
    case MutationOp::kCrop: return "crop";
    case MutationOp::kGaussianBlur: return "gaussian_blur";
    case MutationOp::kGaussianNoise: return "gaussian_noise";
    case MutationOp::kFlip: return "flip";
    case MutationOp::kRotate: return "rotate";
    case MutationOp::kOverlayText: return "overlay_text";
    case MutationOp::kOverlayObject: return "overlay_object";
  }
  return "crop";
}

MutationOp mutation_op_from_string(const std::string& s) {
  if (s == "crop") return MutationOp::kCrop;
  if (s == "gaussian_blur") return MutationOp::kGaussianBlur;
  if (s == "gaussian_noise") return MutationOp::kGaussianNoise;
  if (s == "flip") return MutationOp::kFlip;
  if (s == "rotate") return MutationOp::kRotate;
  if (s == "overlay_text") return MutationOp::kOverlayText;
  if (s == "overlay_object") return MutationOp::kOverlayObject;
  throw ConfigError("unknown mutation op: " + s);
}

Image mutate(const Image& img, MutationOp op, const MutationParams& params,
             std::uint64_t seed) {
  if (!img.valid()) throw ValidationError("invalid input image");
  Rng rng(seed);
  switch (op) {
    case MutationOp::kCrop:
      return crop(img, params.crop_fraction, rng);
    case MutationOp::kGaussianBlur:
      return gaussian_blur(img, params.blur_sigma);
    case MutationOp::kGaussianNoise:
      return gaussian_noise(img, params.noise_sigma, rng);
    case MutationOp::kFlip:
      return flip(img, params.flip_vertical);
    case MutationOp::kRotate:
      return rotate(img, params.rotate_degrees);
    case MutationOp::kOverlayText:
      return overlay_text(img, params.overlay_area_fraction,
                          params.overlay_text, rng);
    case MutationOp::kOverlayObject:
      return overlay_object(img, params.overlay_area_fraction, rng);
  }
  throw ValidationError("unknown mutation op");
}

}  // namespace msb
