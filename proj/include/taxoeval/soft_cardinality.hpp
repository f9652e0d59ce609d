#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "taxoeval/embedding.hpp"
#include "taxoeval/taxonomy.hpp"

namespace taxoeval {

/// Node labels with multiplicity; order never affects a result.
using LabelList = std::vector<std::string>;

/// Preorder labels of every hierarchy node, root included.
LabelList collect_labels(const CategoryHierarchy& h);

/// Pairwise similarity matrix of a label list.
Eigen::MatrixXd similarity_matrix(const LabelList& labels, const Similarity& sim);

/// sum_i 1 / sum_j S(i, j). Throws std::domain_error on a non-positive row sum.
template <typename Derived>
double soft_cardinality(const Eigen::MatrixBase<Derived>& s) {
    double c = 0.0;
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        const double row = static_cast<double>(s.row(i).sum());
        if (!(row > 0.0)) throw std::domain_error("soft_cardinality: non-positive similarity row sum");
        c += 1.0 / row;
    }
    return c;
}

double soft_cardinality(const LabelList& a, const Similarity& sim);

/// Soft-cardinality coverage diagnostics. These see only label inventories and
/// are blind to parent-child structure.
struct SoftScores {
    double nsr = 0.0;
    double nsp = 0.0;
    double soft_f1 = 0.0;
};

/// The union term uses list concatenation (multiset union with multiplicities).
SoftScores nsr_nsp_f1(const LabelList& a, const LabelList& b, const Similarity& sim);

} // namespace taxoeval
