#include "facetrack/geometry.hpp"

#include <algorithm>

namespace facetrack {

double iou(const BBox& a, const BBox& b) noexcept {
    const double ix = std::max(a.x, b.x);
    const double iy = std::max(a.y, b.y);
    const double iright = std::min(a.right(), b.right());
    const double ibottom = std::min(a.bottom(), b.bottom());
    const double iw = iright - ix;
    const double ih = ibottom - iy;
    if (iw <= 0.0 || ih <= 0.0) {
        return 0.0;
    }
    const double inter = iw * ih;
    const double uni = a.area() + b.area() - inter;
    return inter / uni;
}

}  // namespace facetrack
