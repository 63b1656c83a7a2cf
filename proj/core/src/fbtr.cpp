#include "facetrack/fbtr.hpp"

namespace facetrack {

QualityClass ingest_template(TemplatePool& pool, const QualityAttrs& attrs,
                             const std::optional<Embedding>& embedding,
                             const QualityGates& gates) {
    const QualityClass cls = classify(attrs, gates);
    if (embedding && cls != QualityClass::Discarded) {
        pool.add(*embedding, cls);
    }
    return cls;
}

std::optional<ReconnectDecision> best_reconnect(const TemplatePool& query,
                                                std::span<const ReconnectCandidate> candidates,
                                                double min_score) {
    const Embedding* query_mean = query.verify_mean();
    if (query_mean == nullptr) {
        return std::nullopt;
    }

    std::optional<ReconnectDecision> best;
    for (const ReconnectCandidate& cand : candidates) {
        const Embedding* enroll = cand.pool ? cand.pool->enroll_mean() : nullptr;
        if (enroll == nullptr || enroll->size() != query_mean->size()) {
            continue;
        }
        // Both means are unit vectors, so the dot product is the cosine.
        const double score = unit_dot(*enroll, *query_mean);
        if (!best || score > best->score) {
            best = ReconnectDecision{cand.track_id, score};
        }
    }
    if (best && best->score >= min_score) {
        return best;
    }
    return std::nullopt;
}

}  // namespace facetrack
