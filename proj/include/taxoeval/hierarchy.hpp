#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "taxoeval/alignment.hpp"
#include "taxoeval/embedding.hpp"
#include "taxoeval/taxonomy.hpp"

namespace taxoeval {

/// One matched node pair of the optimal edit script, as "/"-joined label paths.
struct NodeMatch {
    std::string expert_path;
    std::string model_path;
    double rename_cost = 0.0;
};

struct EditDistanceResult {
    double us_ted = 0.0;
    double us_nted = 0.0;
    std::size_t expert_nodes = 0;
    std::size_t model_nodes = 0;
    /// Filled only when requested.
    std::vector<NodeMatch> witness;
};

/// k x k matrix with k = max(m, n): the m x n block of child distances, real-vs-dummy
/// cells charging the real child's subtree size, dummy-vs-dummy cells zero.
Eigen::MatrixXd padded_cost_matrix(std::span<const CategoryNode> a, std::span<const CategoryNode> b,
                                   const Eigen::MatrixXd& pairwise);

/// Minimum-cost matching of two child lists given their pairwise distances;
/// unmatched children are deleted or inserted at one unit per subtree node.
double match_cost(std::span<const CategoryNode> a, std::span<const CategoryNode> b,
                  const Eigen::MatrixXd& pairwise);

/// Unordered semantic edit distance between two category subtrees:
/// rename(u, v) + minimum-cost matching of their children.
double tree_distance(const CategoryNode& u, const CategoryNode& v, const Similarity& sim);

EditDistanceResult us_ted(const CategoryHierarchy& expert, const CategoryHierarchy& model,
                          const Similarity& sim, bool with_witness = false);

/// us_ted / (expert_nodes + model_nodes), a fraction in [0, 1].
double us_nted(double us_ted_value, std::size_t expert_nodes, std::size_t model_nodes);

inline constexpr double kDefaultPathPenalty = 1.0;

/// Order-preserving alignment cost of two ancestor chains. The shorter chain is
/// matched to a subsequence of the longer one at 1 - Sim per matched label, plus
/// `lambda` for every label of the longer chain left unmatched.
double sem_path_cost(const LabelPath& s, const LabelPath& s_hat, double lambda, const Similarity& sim);

struct PathAlignmentResult {
    /// Expert paper id to the best cost over its candidate path pairs.
    std::map<std::string, double> per_paper_costs;
    /// Mean of 1 / (1 + cost); null when nothing is aligned.
    std::optional<double> sem_path;
    std::size_t aligned_count = 0;
};

PathAlignmentResult sem_path(const Taxonomy& expert, const Taxonomy& model,
                             const AlignmentSet& alignment, double lambda, const Similarity& sim);

} // namespace taxoeval
