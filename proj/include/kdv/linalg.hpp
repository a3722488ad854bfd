#pragma once

#include <optional>
#include <vector>

#include "kdv/rational.hpp"

namespace kdv {

/// Dense Gaussian elimination over an exact or floating field K.
/// Small systems only; this is not a performance-critical path.
template <class K>
struct LinearSolveResult {
    bool consistent = false;
    bool unique = false;
    std::vector<K> solution;  // one solution when consistent
};

template <class K>
LinearSolveResult<K> solve_linear_system(std::vector<std::vector<K>> A,
                                         std::vector<K> b) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows ? A[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        double best = 0.0;
        for (std::size_t i = r; i < rows; ++i) {
            double mag = ScalarTraits<K>::abs(A[i][c]);
            if (mag > best) {
                best = mag;
                piv = i;
            }
        }
        if (best == 0.0) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        K inv = K(1) / A[r][c];
        for (std::size_t j = c; j < cols; ++j) A[r][j] = A[r][j] * inv;
        b[r] = b[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || scalar_is_zero(A[i][c])) continue;
            K f = A[i][c];
            for (std::size_t j = c; j < cols; ++j)
                A[i][j] = A[i][j] - f * A[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    LinearSolveResult<K> res;
    for (std::size_t i = r; i < rows; ++i)
        if (!scalar_is_zero(b[i])) return res;  // inconsistent
    res.consistent = true;
    res.unique = (pivot_col.size() == cols);
    res.solution.assign(cols, K(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        res.solution[pivot_col[i]] = b[i];
    return res;
}

/// Solves a square system, requiring a unique solution.
template <class K>
std::optional<std::vector<K>> solve_square(
    const std::vector<std::vector<K>>& A, const std::vector<K>& b) {
    auto res = solve_linear_system<K>(A, b);
    if (!res.consistent || !res.unique) return std::nullopt;
    return res.solution;
}

}  // namespace kdv
