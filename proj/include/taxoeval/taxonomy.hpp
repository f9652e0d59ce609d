#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "taxoeval/error.hpp"

namespace taxoeval {

/// A topic category. Internal nodes carry children, terminal nodes carry papers.
/// Sibling order is kept as parsed but no metric depends on it.
struct CategoryNode {
    std::string label;
    std::vector<CategoryNode> children;
    std::vector<std::string> papers;

    bool is_terminal() const { return children.empty(); }
};

enum class ParseMode { strict, lenient };

/// A survey taxonomy: category tree with papers under terminal categories.
struct Taxonomy {
    std::string survey_id;
    CategoryNode root;
    /// Repairs and ignored input, in the order they were encountered.
    std::vector<std::string> warnings;
};

/// The category tree with every paper removed.
struct CategoryHierarchy {
    CategoryNode root;
};

/// Preorder index of a category node within its source taxonomy.
using CategoryId = std::size_t;
inline constexpr CategoryId kUnretrieved = std::numeric_limits<CategoryId>::max();

/// Paper id (normalized title) to terminal category.
struct PaperAssignment {
    std::map<std::string, CategoryId> entries;

    std::size_t size() const { return entries.size(); }
    bool contains(const std::string& paper) const { return entries.count(paper) != 0; }
    CategoryId at(const std::string& paper) const;
};

/// Root-to-category label chain, root first.
using LabelPath = std::vector<std::string>;

/// Parse the `{"name", "subtopics" | "papers"}` JSON shape.
///
/// Strict mode rejects dual-role nodes, duplicate papers and multiple roots with a
/// ValidationError listing every violation. Lenient mode repairs them:
///  - a later duplicate of a paper is dropped (first preorder occurrence wins);
///  - a top-level array is wrapped under a root labeled with `survey_id`;
///  - a node holding both subtopics and papers moves its papers into a
///    "<label> (misc)" child.
/// Empty labels and malformed JSON are rejected in both modes.
Taxonomy parse_taxonomy(std::string_view json_text, ParseMode mode,
                        std::string survey_id = {});

/// Strict-mode constraint check; never throws on bad input.
std::vector<Diagnostic> validate_taxonomy(std::string_view json_text);

CategoryHierarchy hierarchy_of(const Taxonomy& t);
Taxonomy as_taxonomy(const CategoryHierarchy& h, std::string survey_id = {});

PaperAssignment assignment_of(const Taxonomy& t);

/// Ancestor label chains (root included, paper excluded) for every placement
/// of the paper. Titles are compared after normalization.
std::vector<LabelPath> ancestor_paths(const Taxonomy& t, std::string_view paper_title);

/// Same as ancestor_paths, for all papers at once, keyed by paper id.
std::map<std::string, std::vector<LabelPath>> ancestor_path_index(const Taxonomy& t);

/// Number of category nodes in the subtree rooted at `n`, `n` included.
std::size_t subtree_size(const CategoryNode& n);

/// Distinct paper ids in first-occurrence preorder.
std::vector<std::string> paper_ids(const Taxonomy& t);

/// Raw paper titles in preorder, duplicates included.
std::vector<std::string> paper_titles(const Taxonomy& t);

/// Labels of every category node, in preorder.
std::vector<std::string> category_labels(const CategoryNode& root);

} // namespace taxoeval
