#include "taxoeval/perturbation.hpp"

#include <algorithm>
#include <random>

#include "taxoeval/alignment.hpp"

namespace taxoeval {

std::string_view to_string(PerturbationKind kind) {
    switch (kind) {
    case PerturbationKind::sibling_shuffle: return "sibling-shuffle";
    case PerturbationKind::rewire_swap: return "rewire-swap";
    case PerturbationKind::split_leaf: return "split-leaf";
    case PerturbationKind::contract_node: return "contract-node";
    case PerturbationKind::relabel: return "relabel";
    }
    return "unknown";
}

PerturbationKind parse_perturbation_kind(std::string_view name) {
    for (auto k : {PerturbationKind::sibling_shuffle, PerturbationKind::rewire_swap, PerturbationKind::split_leaf,
                   PerturbationKind::contract_node, PerturbationKind::relabel})
        if (to_string(k) == name) return k;
    throw ValidationError("unknown perturbation kind: " + std::string(name));
}

LabelPath parse_node_path(std::string_view text) {
    LabelPath out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto slash = text.find('/', start);
        const auto piece = text.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start);
        if (piece.empty()) throw ValidationError("empty label in node path \"" + std::string(text) + "\"");
        out.emplace_back(piece);
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    return out;
}

std::string format_node_path(const LabelPath& path) {
    std::string out;
    for (const auto& label : path) {
        if (!out.empty()) out += '/';
        out += label;
    }
    return out;
}

namespace {

using IndexPath = std::vector<std::size_t>;

IndexPath resolve(const CategoryNode& root, const LabelPath& path) {
    if (path.empty() || path.front() != root.label)
        throw ValidationError("node path \"" + format_node_path(path) + "\" does not start at the root \"" + root.label + "\"");
    IndexPath out;
    const CategoryNode* cur = &root;
    for (std::size_t depth = 1; depth < path.size(); ++depth) {
        std::size_t found = cur->children.size();
        for (std::size_t i = 0; i < cur->children.size(); ++i) {
            if (cur->children[i].label != path[depth]) continue;
            if (found != cur->children.size())
                throw ValidationError("node path \"" + format_node_path(path) + "\" is ambiguous at \"" + path[depth] + "\"");
            found = i;
        }
        if (found == cur->children.size())
            throw ValidationError("node path \"" + format_node_path(path) + "\" not found");
        out.push_back(found);
        cur = &cur->children[found];
    }
    return out;
}

CategoryNode& at(CategoryNode& root, const IndexPath& idx) {
    CategoryNode* cur = &root;
    for (std::size_t i : idx) cur = &cur->children[i];
    return *cur;
}

template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

void shuffle_node(CategoryNode& n, std::mt19937_64& rng) {
    fisher_yates(n.children, rng);
    fisher_yates(n.papers, rng);
    for (auto& c : n.children) shuffle_node(c, rng);
}

bool is_prefix(const IndexPath& a, const IndexPath& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

} // namespace

Taxonomy shuffle_siblings(const Taxonomy& t, std::uint64_t seed) {
    Taxonomy out = t;
    std::mt19937_64 rng(seed);
    shuffle_node(out.root, rng);
    return out;
}

Taxonomy rewire_swap(const Taxonomy& t, const LabelPath& a, const LabelPath& b) {
    const IndexPath ia = resolve(t.root, a);
    const IndexPath ib = resolve(t.root, b);
    if (ia == ib) return t;
    if (is_prefix(ia, ib) || is_prefix(ib, ia))
        throw ValidationError("cannot swap \"" + format_node_path(a) + "\" and \"" + format_node_path(b) +
                              "\": one is an ancestor of the other");
    Taxonomy out = t;
    std::swap(at(out.root, ia), at(out.root, ib));
    return out;
}

Taxonomy split_leaf(const Taxonomy& t, const LabelPath& leaf, std::size_t parts) {
    if (parts < 2) throw ValidationError("split-leaf needs at least 2 parts");
    Taxonomy out = t;
    CategoryNode& node = at(out.root, resolve(out.root, leaf));
    if (!node.is_terminal()) throw ValidationError("split-leaf target \"" + format_node_path(leaf) + "\" is not terminal");
    if (node.papers.size() < parts)
        throw ValidationError("split-leaf target \"" + format_node_path(leaf) + "\" has " +
                              std::to_string(node.papers.size()) + " papers, fewer than " + std::to_string(parts));

    std::vector<std::pair<std::string, std::string>> keyed;
    for (auto& p : node.papers) keyed.emplace_back(normalize_title(p), std::move(p));
    std::sort(keyed.begin(), keyed.end());

    node.papers.clear();
    node.children.resize(parts);
    for (std::size_t i = 0; i < parts; ++i) node.children[i].label = node.label + " / part " + std::to_string(i + 1);
    for (std::size_t k = 0; k < keyed.size(); ++k) node.children[k % parts].papers.push_back(std::move(keyed[k].second));
    return out;
}

Taxonomy contract_node(const Taxonomy& t, const LabelPath& path) {
    const IndexPath idx = resolve(t.root, path);
    if (idx.empty()) throw ValidationError("cannot contract the root");
    Taxonomy out = t;
    IndexPath parent_idx(idx.begin(), idx.end() - 1);
    CategoryNode& parent = at(out.root, parent_idx);
    const auto pos = static_cast<std::ptrdiff_t>(idx.back());
    if (parent.children[std::size_t(pos)].is_terminal())
        throw ValidationError("cannot contract terminal node \"" + format_node_path(path) + "\"");
    std::vector<CategoryNode> lifted = std::move(parent.children[std::size_t(pos)].children);
    parent.children.erase(parent.children.begin() + pos);
    parent.children.insert(parent.children.begin() + pos, std::make_move_iterator(lifted.begin()),
                           std::make_move_iterator(lifted.end()));
    return out;
}

Taxonomy relabel(const Taxonomy& t, const LabelPath& path, std::string new_label) {
    if (new_label.find_first_not_of(" \t\r\n") == std::string::npos) throw ValidationError("new label is empty");
    Taxonomy out = t;
    at(out.root, resolve(out.root, path)).label = std::move(new_label);
    return out;
}

Taxonomy apply(const Taxonomy& t, const Perturbation& p) {
    switch (p.kind) {
    case PerturbationKind::sibling_shuffle: return shuffle_siblings(t, p.seed);
    case PerturbationKind::rewire_swap: return rewire_swap(t, p.target, p.other);
    case PerturbationKind::split_leaf: return split_leaf(t, p.target, p.parts);
    case PerturbationKind::contract_node: return contract_node(t, p.target);
    case PerturbationKind::relabel: return relabel(t, p.target, p.new_label);
    }
    throw ValidationError("unknown perturbation kind");
}

} // namespace taxoeval
