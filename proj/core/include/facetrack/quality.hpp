#pragma once

#include "facetrack/errors.hpp"

#include <cmath>

namespace facetrack {

/// Per-detection image quality indicators: detector confidence, head pose
/// angles in degrees, and a blur score. Confidence and blur live in [0,1],
/// angles in [-180, 180].
struct QualityAttrs {
    double det_confidence = 0.0;
    double yaw = 0.0;
    double pitch = 0.0;
    double roll = 0.0;
    double blur = 0.0;

    void validate() const {
        if (!(det_confidence >= 0.0 && det_confidence <= 1.0)) {
            throw ValidationError("quality: det_confidence outside [0,1]");
        }
        if (!(blur >= 0.0 && blur <= 1.0)) {
            throw ValidationError("quality: blur outside [0,1]");
        }
        for (double a : {yaw, pitch, roll}) {
            if (!(a >= -180.0 && a <= 180.0)) {
                throw ValidationError("quality: head angle outside [-180,180]");
            }
        }
    }
};

/// Role a detected face can play in tracklet reconnection.
enum class QualityClass {
    Enrollable,  ///< high quality; builds the tracklet's reference templates
    Verifiable,  ///< reliable enough to match against reference templates
    Discarded,   ///< unusable for reconnection
};

/// One gate tier. Confidence and blur are strict lower bounds (value must
/// exceed them); the angle bound is inclusive and applies to |yaw|, |pitch|
/// and |roll| alike. The verifiable tier relaxes blur to a non-strict lower
/// bound so that enrollable faces always remain a subset of verifiable ones.
struct GateTier {
    double min_confidence = 0.0;
    double max_abs_angle = 180.0;
    double min_blur = 0.0;
};

/// Enroll/verify gate pair. Enroll must be at least as strict as verify in
/// every field.
struct QualityGates {
    GateTier enroll{0.95, 25.0, 0.9};
    GateTier verify{0.8, 60.0, 0.75};

    void validate() const {
        if (enroll.min_confidence < verify.min_confidence ||
            enroll.max_abs_angle > verify.max_abs_angle || enroll.min_blur < verify.min_blur) {
            throw ConfigError("quality gates: enroll tier must be at least as strict as verify");
        }
    }
};

/// Classifies a face by quality: Enrollable if every enroll gate passes,
/// else Verifiable if every verify gate passes, else Discarded.
QualityClass classify(const QualityAttrs& quality, const QualityGates& gates) noexcept;

}  // namespace facetrack
