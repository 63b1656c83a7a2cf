#include "facetrack/template_pool.hpp"

#include <utility>

#include "facetrack/errors.hpp"

namespace facetrack {

TemplatePool::TemplatePool(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) {
        throw ConfigError("template pool capacity must be positive");
    }
}

void TemplatePool::push_bounded(std::vector<Embedding>& tier, Embedding value) {
    if (!tier.empty() && tier.front().size() != value.size()) {
        throw ValidationError("template pool: embedding dimension changed mid-stream");
    }
    if (tier.size() == capacity_) {
        tier.erase(tier.begin());
    }
    tier.push_back(std::move(value));
}

void TemplatePool::add(const Embedding& embedding, QualityClass cls) {
    if (cls == QualityClass::Discarded) {
        return;
    }
    Embedding unit = normalized(embedding);
    if (cls == QualityClass::Enrollable) {
        push_bounded(enroll_, unit);
        enroll_mean_.reset();
    }
    push_bounded(verify_, std::move(unit));
    verify_mean_.reset();
}

void TemplatePool::absorb(TemplatePool&& other) {
    for (Embedding& e : other.enroll_) {
        push_bounded(enroll_, std::move(e));
    }
    for (Embedding& e : other.verify_) {
        push_bounded(verify_, std::move(e));
    }
    enroll_mean_.reset();
    verify_mean_.reset();
    other.enroll_.clear();
    other.verify_.clear();
    other.enroll_mean_.reset();
    other.verify_mean_.reset();
}

const Embedding* TemplatePool::enroll_mean() const {
    if (enroll_.empty()) {
        return nullptr;
    }
    if (!enroll_mean_) {
        enroll_mean_ = mean_embedding(enroll_);
    }
    return &*enroll_mean_;
}

const Embedding* TemplatePool::verify_mean() const {
    if (verify_.empty()) {
        return nullptr;
    }
    if (!verify_mean_) {
        verify_mean_ = mean_embedding(verify_);
    }
    return &*verify_mean_;
}

}  // namespace facetrack
