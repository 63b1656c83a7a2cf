#include "facetrack/quality.hpp"

#include <algorithm>
#include <cmath>

namespace facetrack {

namespace {

double max_abs_angle(const QualityAttrs& q) noexcept {
    return std::max({std::fabs(q.yaw), std::fabs(q.pitch), std::fabs(q.roll)});
}

bool passes_enroll(const QualityAttrs& q, const GateTier& t) noexcept {
    return q.det_confidence > t.min_confidence && max_abs_angle(q) <= t.max_abs_angle &&
           q.blur > t.min_blur;
}

bool passes_verify(const QualityAttrs& q, const GateTier& t) noexcept {
    // Blur is a non-strict bound at this tier (see QualityGates docs).
    return q.det_confidence > t.min_confidence && max_abs_angle(q) <= t.max_abs_angle &&
           q.blur >= t.min_blur;
}

}  // namespace

QualityClass classify(const QualityAttrs& quality, const QualityGates& gates) noexcept {
    if (passes_enroll(quality, gates.enroll)) {
        return QualityClass::Enrollable;
    }
    if (passes_verify(quality, gates.verify)) {
        return QualityClass::Verifiable;
    }
    return QualityClass::Discarded;
}

}  // namespace facetrack
