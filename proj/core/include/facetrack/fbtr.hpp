#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "facetrack/embedding.hpp"
#include "facetrack/quality.hpp"
#include "facetrack/template_pool.hpp"

namespace facetrack {

// Classifies the face and, unless it is discarded or carries no embedding,
// stores it in the pool. Returns the quality class either way.
QualityClass ingest_template(TemplatePool& pool, const QualityAttrs& attrs,
                             const std::optional<Embedding>& embedding,
                             const QualityGates& gates);

struct ReconnectCandidate {
    std::int64_t track_id = 0;
    const TemplatePool* pool = nullptr;
};

struct ReconnectDecision {
    std::int64_t track_id = 0;
    double score = 0.0;
};

// Picks the candidate whose enrolment mean is most similar to the query
// pool's verification mean, provided the similarity reaches min_score
// (inclusive). Candidates must be ordered by ascending track id; score ties
// keep the earlier candidate, so the lowest id wins. Candidates without an
// enrolment mean never match.
std::optional<ReconnectDecision> best_reconnect(const TemplatePool& query,
                                                std::span<const ReconnectCandidate> candidates,
                                                double min_score);

}  // namespace facetrack
