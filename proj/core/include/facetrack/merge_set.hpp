#pragma once

#include <cstdint>
#include <unordered_map>

#include "facetrack/detection.hpp"

namespace facetrack {

// Disjoint sets over track ids. The canonical id of a set is its lowest
// member, so retroactive rewriting always keeps the earliest-born label.
class MergeSet {
public:
    // Declares that the two ids name the same subject. Order is irrelevant.
    void record(std::int64_t a, std::int64_t b) {
        std::int64_t ra = find(a);
        std::int64_t rb = find(b);
        if (ra == rb) {
            return;
        }
        if (rb < ra) {
            std::swap(ra, rb);
        }
        parent_[rb] = ra;
    }

    // Lowest id merged with `id`; ids never recorded resolve to themselves.
    std::int64_t resolve(std::int64_t id) const { return find(id); }

    bool same(std::int64_t a, std::int64_t b) const { return find(a) == find(b); }

    // Rewrites every track id to its canonical id. Safe to apply repeatedly.
    void apply(AssignmentLog& log) const {
        for (auto& entry : log.entries) {
            entry.track_id = find(entry.track_id);
        }
    }

    AssignmentLog applied(const AssignmentLog& log) const {
        AssignmentLog out = log;
        apply(out);
        return out;
    }

private:
    std::int64_t find(std::int64_t id) const {
        auto it = parent_.find(id);
        if (it == parent_.end()) {
            return id;
        }
        std::int64_t root = id;
        while (true) {
            auto p = parent_.find(root);
            if (p == parent_.end()) {
                break;
            }
            root = p->second;
        }
        while (id != root) {
            auto p = parent_.find(id);
            const std::int64_t next = p->second;
            p->second = root;
            id = next;
        }
        return root;
    }

    // Roots are always set minima, so find() is the canonical id directly.
    mutable std::unordered_map<std::int64_t, std::int64_t> parent_;
};

}  // namespace facetrack
