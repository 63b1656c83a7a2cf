#include "facetrack/association.hpp"

#include <algorithm>
#include <limits>

namespace facetrack {

namespace {

// Shortest augmenting path assignment on a minimization cost matrix with
// n <= m. Returns col4row. Rows are augmented in ascending order; column
// distance ties resolve to the lowest column index.
std::vector<std::int64_t> lsap_min(std::size_t n, std::size_t m,
                                   const std::vector<double>& cost) {
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> u(n, 0.0);
    std::vector<double> v(m, 0.0);
    std::vector<std::int64_t> col4row(n, -1);
    std::vector<std::int64_t> row4col(m, -1);

    std::vector<double> shortest(m);
    std::vector<std::int64_t> path(m);
    std::vector<bool> row_visited(n);
    std::vector<bool> col_visited(m);

    for (std::size_t cur_row = 0; cur_row < n; ++cur_row) {
        std::fill(shortest.begin(), shortest.end(), kInf);
        std::fill(path.begin(), path.end(), -1);
        std::fill(row_visited.begin(), row_visited.end(), false);
        std::fill(col_visited.begin(), col_visited.end(), false);

        double min_val = 0.0;
        std::size_t i = cur_row;
        std::int64_t sink = -1;

        while (sink == -1) {
            row_visited[i] = true;
            double lowest = kInf;
            std::int64_t index = -1;

            for (std::size_t j = 0; j < m; ++j) {
                if (col_visited[j]) {
                    continue;
                }
                const double r = min_val + cost[i * m + j] - u[i] - v[j];
                if (r < shortest[j]) {
                    shortest[j] = r;
                    path[j] = static_cast<std::int64_t>(i);
                }
                if (shortest[j] < lowest) {
                    lowest = shortest[j];
                    index = static_cast<std::int64_t>(j);
                }
            }

            min_val = lowest;
            const std::size_t j = static_cast<std::size_t>(index);
            col_visited[j] = true;
            if (row4col[j] == -1) {
                sink = index;
            } else {
                i = static_cast<std::size_t>(row4col[j]);
            }
        }

        u[cur_row] += min_val;
        for (std::size_t r = 0; r < n; ++r) {
            if (row_visited[r] && r != cur_row) {
                u[r] += min_val - shortest[static_cast<std::size_t>(col4row[r])];
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (col_visited[j]) {
                v[j] -= min_val - shortest[j];
            }
        }

        std::int64_t j = sink;
        while (true) {
            const std::int64_t r = path[static_cast<std::size_t>(j)];
            row4col[static_cast<std::size_t>(j)] = r;
            std::swap(col4row[static_cast<std::size_t>(r)], j);
            if (r == static_cast<std::int64_t>(cur_row)) {
                break;
            }
        }
    }
    return col4row;
}

}  // namespace

Assignment solve_assignment(const ScoreMatrix& scores) {
    Assignment out;
    const std::size_t rows = scores.rows();
    const std::size_t cols = scores.cols();
    out.match.assign(rows, -1);
    if (scores.empty()) {
        return out;
    }

    if (rows <= cols) {
        std::vector<double> cost(rows * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                cost[r * cols + c] = -scores.at(r, c);
            }
        }
        out.match = lsap_min(rows, cols, cost);
    } else {
        // Transpose so the augmented side is the smaller one.
        std::vector<double> cost(cols * rows);
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t r = 0; r < rows; ++r) {
                cost[c * rows + r] = -scores.at(r, c);
            }
        }
        const std::vector<std::int64_t> row4col = lsap_min(cols, rows, cost);
        for (std::size_t c = 0; c < cols; ++c) {
            if (row4col[c] != -1) {
                out.match[static_cast<std::size_t>(row4col[c])] = static_cast<std::int64_t>(c);
            }
        }
    }

    for (std::size_t r = 0; r < rows; ++r) {
        if (out.match[r] != -1) {
            out.total_score += scores.at(r, static_cast<std::size_t>(out.match[r]));
        }
    }
    return out;
}

MatchResult match_with_gate(const ScoreMatrix& scores, double min_score) {
    MatchResult out;
    const Assignment solved = solve_assignment(scores);
    std::vector<bool> col_taken(scores.cols(), false);

    for (std::size_t r = 0; r < scores.rows(); ++r) {
        const std::int64_t c = solved.match[r];
        if (c != -1 && scores.at(r, static_cast<std::size_t>(c)) > min_score) {
            out.matches.emplace_back(r, static_cast<std::size_t>(c));
            col_taken[static_cast<std::size_t>(c)] = true;
        } else {
            out.unmatched_rows.push_back(r);
        }
    }
    for (std::size_t c = 0; c < scores.cols(); ++c) {
        if (!col_taken[c]) {
            out.unmatched_cols.push_back(c);
        }
    }
    return out;
}

}  // namespace facetrack
