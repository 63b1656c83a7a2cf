#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "facetrack/embedding.hpp"
#include "facetrack/quality.hpp"

namespace facetrack {

// Bounded store of face templates for one tracklet. Templates are kept
// normalized; enrollable faces land in both tiers so the verification pool
// is always a superset of the enrolment pool.
class TemplatePool {
public:
    explicit TemplatePool(std::size_t capacity = 64);

    // Normalizes and stores the embedding. Discarded faces are dropped.
    // When a tier is full the oldest template is evicted first.
    void add(const Embedding& embedding, QualityClass cls);

    // Appends the other pool's templates after this pool's own, then
    // re-applies the capacity bound. Used when an absorbed tracklet's
    // history is folded into the surviving one.
    void absorb(TemplatePool&& other);

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t enroll_count() const noexcept { return enroll_.size(); }
    std::size_t verify_count() const noexcept { return verify_.size(); }
    bool has_enrollable() const noexcept { return !enroll_.empty(); }

    // Unit-norm mean of a tier, nullptr when the tier is empty. Cached and
    // recomputed only after the pool changes.
    const Embedding* enroll_mean() const;
    const Embedding* verify_mean() const;

private:
    void push_bounded(std::vector<Embedding>& tier, Embedding value);

    std::size_t capacity_;
    std::vector<Embedding> enroll_;
    std::vector<Embedding> verify_;
    mutable std::optional<Embedding> enroll_mean_;
    mutable std::optional<Embedding> verify_mean_;
};

}  // namespace facetrack
