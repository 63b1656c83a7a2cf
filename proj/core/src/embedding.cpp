#include "facetrack/embedding.hpp"

#include <cmath>

#include "facetrack/errors.hpp"

namespace facetrack {

namespace {
constexpr double kZeroNormCutoff = 1e-300;
}

double l2_norm(std::span<const double> v) noexcept {
    double sum = 0.0;
    for (double x : v) {
        sum += x * x;
    }
    return std::sqrt(sum);
}

Embedding normalized(std::span<const double> v) {
    if (v.empty()) {
        throw ValidationError("embedding: cannot normalize an empty vector");
    }
    const double norm = l2_norm(v);
    if (!std::isfinite(norm) || norm < kZeroNormCutoff) {
        throw ValidationError("embedding: degenerate (zero or non-finite norm)");
    }
    Embedding out(v.begin(), v.end());
    for (double& x : out) {
        x /= norm;
    }
    return out;
}

Embedding mean_embedding(const std::vector<Embedding>& templates) {
    if (templates.empty()) {
        throw ValidationError("mean_embedding: no templates");
    }
    const std::size_t dim = templates.front().size();
    Embedding acc(dim, 0.0);
    for (const Embedding& t : templates) {
        if (t.size() != dim) {
            throw ValidationError("mean_embedding: mixed template dimensions");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            acc[i] += t[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(templates.size());
    for (double& x : acc) {
        x *= inv;
    }
    return normalized(acc);
}

double similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw ValidationError("similarity: dimension mismatch");
    }
    const Embedding un = normalized(u);
    const Embedding vn = normalized(v);
    return unit_dot(un, vn);
}

double unit_dot(std::span<const double> u, std::span<const double> v) noexcept {
    double dot = 0.0;
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        dot += u[i] * v[i];
    }
    return dot;
}

}  // namespace facetrack
