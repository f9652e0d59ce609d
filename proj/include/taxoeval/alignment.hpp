#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace taxoeval {

class Similarity;

/// NFC, lowercase, every character outside [a-z0-9] becomes a space, then
/// whitespace is collapsed and trimmed.
std::string normalize_title(std::string_view raw);

/// Edit distance over bytes.
std::size_t levenshtein(std::string_view a, std::string_view b);

struct AlignedPair {
    std::string expert;  // normalized expert title
    std::string model;   // normalized model title
    double score = 0.0;
};

/// One-to-one matching between expert and model papers.
struct AlignmentSet {
    std::vector<AlignedPair> pairs;
    std::vector<std::string> unmatched_expert;
    std::vector<std::string> unmatched_model;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
};

struct AlignmentOptions {
    /// Lower bound of the containment branch.
    double threshold = 0.6;
};

/// True when (score, titles) satisfy the matching rule: an exact score of 1, or
/// a score in [threshold, 1) with one normalized title containing the other.
bool admissible_match(double score, std::string_view expert_norm,
                      std::string_view model_norm, double threshold);

/// Titles are normalized and deduplicated before matching. Each expert paper takes
/// its best admissible candidate (highest score, then smaller edit distance, then
/// lexicographically smaller); experts are served in descending best-score order
/// and a claimed model paper is unavailable to later experts.
AlignmentSet align(const std::vector<std::string>& expert,
                   const std::vector<std::string>& model, const Similarity& sim,
                   const AlignmentOptions& options = {});

struct RetrievalScores {
    std::optional<double> recall;     // null when there are no expert papers
    std::optional<double> precision;  // null when there are no model papers
    std::optional<double> f1;         // 0 when recall + precision = 0
};

RetrievalScores retrieval_scores(const AlignmentSet& a, std::size_t n_expert,
                                 std::size_t n_model);

} // namespace taxoeval
