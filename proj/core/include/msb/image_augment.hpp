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

#ifndef MSB_IMAGE_AUGMENT_HPP_
#define MSB_IMAGE_AUGMENT_HPP_

#include <cstdint>
#include <string>

#include "msb/image.hpp"

namespace msb {

enum class MutationOp {
  kCrop,
  kGaussianBlur,
  kGaussianNoise,
  kFlip,
  kRotate,
  kOverlayText,
  kOverlayObject,
};

std::string to_string(MutationOp op);
MutationOp mutation_op_from_string(const std::string& s);

// Declared parameter ranges; out-of-range values raise ValidationError.
struct MutationParams {
  double crop_fraction = 0.9;          // retained area, [0.7, 1.0]
  double blur_sigma = 1.0;             // [0.5, 3.0]
  double noise_sigma = 5.0;            // [0, 20] intensity units; 0 = identity
  bool flip_vertical = false;          // horizontal by default
  int rotate_degrees = 90;             // 90, 180 or 270
  double overlay_area_fraction = 0.05; // [0, 0.10]
  std::string overlay_text;            // seeded random characters when empty
};

// Images smaller than this per side cannot be cropped (CapacityError).
inline constexpr std::size_t kMinCropInputSide = 32;

// Applies one mutation. All randomness (noise field, crop offset, overlay
// placement and content) derives from `seed`; identical
// (image, op, params, seed) gives bit-identical output. Dimensions change
// only for Crop and Rotate.
Image mutate(const Image& img, MutationOp op, const MutationParams& params,
             std::uint64_t seed);

}  // namespace msb

#endif  // MSB_IMAGE_AUGMENT_HPP_
