#pragma once

#include "relight/core/image.hpp"

namespace relight {

/// Bilinear sample with edge replication. (x, y) in pixel coordinates,
/// pixel centers at integers.
float sample_bilinear(const Plane& plane, double x, double y) noexcept;

/// Bilinear resize with pixel-center alignment. Aspect ratio is the caller's
/// business. Throws ValidationError for a zero target dimension.
Frame resize_bilinear(const Frame& frame, int new_width, int new_height);
Plane resize_bilinear(const Plane& plane, int new_width, int new_height);

/// Width that keeps the aspect ratio at `target_height`, rounded to even.
int scaled_width(int width, int height, int target_height);

}  // namespace relight
