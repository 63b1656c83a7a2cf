#pragma once

#include <cstdint>
#include <vector>

namespace facetrack {

// Dense row-major score matrix. Rows are tracklets, columns are detections.
class ScoreMatrix {
public:
    ScoreMatrix() = default;
    ScoreMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Assignment {
    // match[r] is the column assigned to row r, or -1 when the row is unmatched.
    std::vector<std::int64_t> match;
    double total_score = 0.0;
};

// Maximum-total-score one-to-one assignment. min(rows, cols) pairs are matched.
// Deterministic: among equal-score optima the solver augments rows in ascending
// order and breaks distance ties toward the lowest column index.
Assignment solve_assignment(const ScoreMatrix& scores);

struct MatchResult {
    // Pairs (row, col) that survived the gate.
    std::vector<std::pair<std::size_t, std::size_t>> matches;
    std::vector<std::size_t> unmatched_rows;
    std::vector<std::size_t> unmatched_cols;
};

// Solves the assignment and drops every pair whose score is not strictly
// above min_score. Outputs are sorted ascending.
MatchResult match_with_gate(const ScoreMatrix& scores, double min_score);

}  // namespace facetrack
