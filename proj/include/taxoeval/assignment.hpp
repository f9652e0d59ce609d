#pragma once

#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

namespace taxoeval {

template <typename Scalar>
struct AssignmentResult {
    Scalar cost{};
    /// col_of_row[i] is the column assigned to row i.
    std::vector<Eigen::Index> col_of_row;
};

/// Exact minimum-cost perfect assignment on a square matrix (Hungarian method with
/// row/column potentials, O(n^3)). Among equal reduced costs the lowest column
/// index is taken. The returned cost is the sum of the chosen entries.
template <typename Derived>
AssignmentResult<typename Derived::Scalar> min_cost_assignment(const Eigen::MatrixBase<Derived>& cost) {
    using Scalar = typename Derived::Scalar;
    static_assert(std::is_arithmetic_v<Scalar>, "assignment needs a real or integral scalar");
    if (cost.rows() != cost.cols()) throw std::invalid_argument("min_cost_assignment: matrix must be square");

    const Eigen::Index n = cost.rows();
    AssignmentResult<Scalar> result;
    result.col_of_row.assign(static_cast<std::size_t>(n), -1);
    if (n == 0) return result;

    const Scalar inf = std::numeric_limits<Scalar>::has_infinity ? std::numeric_limits<Scalar>::infinity()
                                                                 : std::numeric_limits<Scalar>::max();

    // 1-based: index 0 is the virtual source column.
    std::vector<Scalar> u(n + 1, Scalar{}), v(n + 1, Scalar{});
    std::vector<Eigen::Index> row_of_col(n + 1, 0), way(n + 1, 0);

    for (Eigen::Index i = 1; i <= n; ++i) {
        row_of_col[0] = i;
        Eigen::Index j0 = 0;
        std::vector<Scalar> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const Eigen::Index i0 = row_of_col[j0];
            Scalar delta = inf;
            Eigen::Index j1 = 0;
            for (Eigen::Index j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const Scalar cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (Eigen::Index j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of_col[j0] != 0);
        do {
            const Eigen::Index j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    for (Eigen::Index j = 1; j <= n; ++j) result.col_of_row[row_of_col[j] - 1] = j - 1;
    for (Eigen::Index i = 0; i < n; ++i) result.cost += cost(i, result.col_of_row[i]);
    return result;
}

} // namespace taxoeval
