#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "taxoeval/taxonomy.hpp"

namespace taxoeval {

enum class PerturbationKind { sibling_shuffle, rewire_swap, split_leaf, contract_node, relabel };

std::string_view to_string(PerturbationKind kind);
/// Accepts the names printed by to_string ("sibling-shuffle", ...). Throws ValidationError.
PerturbationKind parse_perturbation_kind(std::string_view name);

struct Perturbation {
    PerturbationKind kind = PerturbationKind::sibling_shuffle;
    std::uint64_t seed = 0;
    LabelPath target;        // split-leaf, contract-node, relabel, first rewire node
    LabelPath other;         // second rewire node
    std::size_t parts = 2;   // split-leaf
    std::string new_label;   // relabel
};

/// "R/A/C" -> {"R", "A", "C"}. The first element names the root.
LabelPath parse_node_path(std::string_view text);
std::string format_node_path(const LabelPath& path);

/// Every children list and paper list permuted by a seeded mt19937_64 Fisher-Yates.
Taxonomy shuffle_siblings(const Taxonomy& t, std::uint64_t seed);

/// Exchange the parents of two subtrees. Throws ValidationError when one node is an
/// ancestor of the other. Swapping a node with itself returns the input.
Taxonomy rewire_swap(const Taxonomy& t, const LabelPath& a, const LabelPath& b);

/// Turn a terminal node into an internal one with `parts` children labeled
/// "<label> / part i"; papers, sorted by normalized title, are dealt round-robin.
Taxonomy split_leaf(const Taxonomy& t, const LabelPath& leaf, std::size_t parts);

/// Remove an internal non-root node, splicing its children into its parent at its position.
Taxonomy contract_node(const Taxonomy& t, const LabelPath& node);

Taxonomy relabel(const Taxonomy& t, const LabelPath& node, std::string new_label);

Taxonomy apply(const Taxonomy& t, const Perturbation& p);

} // namespace taxoeval
