#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "taxoeval/alignment.hpp"
#include "taxoeval/taxonomy.hpp"

namespace taxoeval {

/// Class-by-cluster counts: rows are expert categories, columns model categories.
/// Only categories that occur in the universe get a row or column, in ascending id order.
struct ContingencyTable {
    Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> counts;
    std::vector<CategoryId> row_ids;
    std::vector<CategoryId> col_ids;

    Eigen::Matrix<long, Eigen::Dynamic, 1> row_sums() const { return counts.rowwise().sum(); }
    Eigen::Matrix<long, 1, Eigen::Dynamic> col_sums() const { return counts.colwise().sum(); }
    long total() const { return counts.sum(); }
};

/// Throws ValidationError naming the first universe paper missing from either side.
ContingencyTable contingency(const PaperAssignment& u_star, const PaperAssignment& u_hat,
                             const std::vector<std::string>& universe);

/// Adjusted Rand Index from the pair-count formula. When the denominator vanishes
/// the result is 1 if the two partitions coincide and 0 otherwise.
double ari(const ContingencyTable& table);

struct VMeasure {
    double homogeneity = 1.0;
    double completeness = 1.0;
    double v = 1.0;
};

/// Natural-log entropies. Homogeneity is 1 when H(expert) = 0, completeness is 1
/// when H(model) = 0, and v is 0 when both components are 0.
VMeasure homogeneity_completeness_v(const ContingencyTable& table);

/// True when the table pairs each row with exactly one column and vice versa.
bool identical_partitions(const ContingencyTable& table);

struct RestrictedAssignments {
    PaperAssignment expert;
    /// Keyed by expert paper id, carrying the matched model paper's category.
    PaperAssignment model;
    std::vector<std::string> universe;

    bool empty() const { return universe.empty(); }
};

/// Universe = aligned expert papers.
RestrictedAssignments restrict_to_intersection(const PaperAssignment& u_star,
                                               const PaperAssignment& u_hat,
                                               const AlignmentSet& alignment);

/// Model assignment over every expert paper: aligned papers take the category of
/// their matched model paper, the rest map to kUnretrieved.
PaperAssignment extend_e2e(const PaperAssignment& u_hat, const AlignmentSet& alignment,
                           const std::vector<std::string>& expert_universe);

} // namespace taxoeval
