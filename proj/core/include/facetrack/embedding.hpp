#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace facetrack {

/// Face template vector. The dimension is fixed once per run and validated
/// at ingestion; all entries must be finite.
using Embedding = std::vector<double>;

/// L2 norm of v.
double l2_norm(std::span<const double> v) noexcept;

/// Returns v scaled to unit L2 norm.
/// Throws ValidationError when v is empty or has (near-)zero norm.
Embedding normalized(std::span<const double> v);

/// Component-wise arithmetic mean of the templates, L2-normalized.
/// Throws ValidationError when the list is empty, dimensions are mixed,
/// or the mean is degenerate (zero vector).
Embedding mean_embedding(const std::vector<Embedding>& templates);

/// Cosine similarity of u and v after L2 normalization, in [-1, 1].
/// Throws ValidationError on dimension mismatch or zero-norm input.
double similarity(std::span<const double> u, std::span<const double> v);

/// Dot product of two vectors already known to be unit-norm; the hot path
/// used by reconnection where means are cached in normalized form.
double unit_dot(std::span<const double> u, std::span<const double> v) noexcept;

}  // namespace facetrack
