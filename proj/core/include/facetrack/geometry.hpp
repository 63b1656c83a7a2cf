#pragma once

#include <cmath>

#include "facetrack/errors.hpp"

namespace facetrack {

/// Axis-aligned box in continuous pixel coordinates, stored as
/// (left, top, width, height). Width and height must be strictly positive
/// and all coordinates finite; degenerate boxes are rejected at construction.
struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    BBox() = default;

    BBox(double x_, double y_, double w_, double h_) : x(x_), y(y_), w(w_), h(h_) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(w) || !std::isfinite(h)) {
            throw ValidationError("bbox: coordinates must be finite");
        }
        if (w <= 0.0 || h <= 0.0) {
            throw ValidationError("bbox: width and height must be > 0");
        }
    }

    double area() const noexcept { return w * h; }
    double right() const noexcept { return x + w; }
    double bottom() const noexcept { return y + h; }
    double cx() const noexcept { return x + w / 2.0; }
    double cy() const noexcept { return y + h / 2.0; }

    bool operator==(const BBox& other) const noexcept = default;
};

/// Intersection-over-union of two boxes. 0 when disjoint, 1 when identical,
/// symmetric in its arguments. Uses exact real-valued areas.
double iou(const BBox& a, const BBox& b) noexcept;

}  // namespace facetrack
