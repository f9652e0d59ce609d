#include "taxoeval/taxonomy.hpp"

#include <functional>
#include <set>

#include <json.hpp>

#include "taxoeval/alignment.hpp"
#include "taxoeval/detail/taxonomy_json.hpp"

namespace taxoeval {

using nlohmann::json;

CategoryId PaperAssignment::at(const std::string& paper) const {
    auto it = entries.find(paper);
    if (it == entries.end()) throw ValidationError("paper not in assignment: " + paper);
    return it->second;
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n\f\v");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n\f\v");
    return std::string(s.substr(first, last - first + 1));
}

std::string join_path(const std::string& parent, const std::string& label) {
    return parent.empty() ? label : parent + "/" + label;
}

class Builder {
public:
    Builder(ParseMode mode, std::vector<std::string>& warnings, std::vector<Diagnostic>& violations)
        : mode_(mode), warnings_(warnings), violations_(violations) {}

    CategoryNode node(const json& j, const std::string& parent_path, std::size_t index) {
        const std::string where = parent_path.empty() ? "root" : parent_path + "[" + std::to_string(index) + "]";
        if (!j.is_object()) fatal(where, "category node is not a JSON object");
        auto name = j.find("name");
        if (name == j.end() || !name->is_string()) fatal(where, "category node has no string \"name\"");

        CategoryNode out;
        out.label = trim(name->get<std::string>());
        if (out.label.empty()) fatal(where, "category label is empty");
        const std::string path = join_path(parent_path, out.label);

        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() != "name" && it.key() != "subtopics" && it.key() != "papers")
                warnings_.push_back(path + ": ignored unknown field \"" + it.key() + "\"");
        }

        auto subs = j.find("subtopics");
        auto papers = j.find("papers");
        if (subs != j.end() && !subs->is_array()) fatal(path, "\"subtopics\" is not an array");
        if (papers != j.end() && !papers->is_array()) fatal(path, "\"papers\" is not an array");

        if (subs != j.end()) {
            std::size_t i = 0;
            for (const auto& child : *subs) out.children.push_back(node(child, path, i++));
        }
        if (papers != j.end()) {
            for (const auto& p : *papers) {
                if (!p.is_string()) fatal(path, "paper entry is not a string");
                std::string title = trim(p.get<std::string>());
                if (normalize_title(title).empty()) {
                    if (mode_ == ParseMode::strict) {
                        violations_.push_back({path, "paper title is empty after normalization: \"" + title + "\""});
                        out.papers.push_back(std::move(title));
                    } else {
                        warnings_.push_back(path + ": dropped paper with empty normalized title \"" + title + "\"");
                    }
                    continue;
                }
                out.papers.push_back(std::move(title));
            }
        }

        if (subs == j.end() && papers == j.end())
            warnings_.push_back(path + ": node has neither \"subtopics\" nor \"papers\"; treated as an empty paper category");
        else if (subs != j.end() && subs->empty() && papers == j.end())
            warnings_.push_back(path + ": empty \"subtopics\"; treated as an empty paper category");

        if (!out.children.empty() && !out.papers.empty()) {
            if (mode_ == ParseMode::strict) {
                violations_.push_back({path, "node has both subtopics and papers"});
            } else {
                CategoryNode misc;
                misc.label = out.label + " (misc)";
                misc.papers = std::move(out.papers);
                out.papers.clear();
                out.children.push_back(std::move(misc));
                warnings_.push_back(path + ": node had both subtopics and papers; papers moved to \"" +
                                    out.label + " (misc)\"");
            }
        }
        return out;
    }

    [[noreturn]] void fatal(const std::string& where, const std::string& message) {
        violations_.push_back({where, message});
        throw ValidationError(where + ": " + message, violations_);
    }

private:
    ParseMode mode_;
    std::vector<std::string>& warnings_;
    std::vector<Diagnostic>& violations_;
};

// Preorder duplicate scan. Lenient mode drops later occurrences.
void check_duplicates(CategoryNode& root, ParseMode mode, std::vector<std::string>& warnings,
                      std::vector<Diagnostic>& violations) {
    std::map<std::string, std::string> first_seen;
    std::function<void(CategoryNode&, const std::string&)> visit = [&](CategoryNode& n, const std::string& parent) {
        const std::string path = join_path(parent, n.label);
        std::vector<std::string> kept;
        for (auto& title : n.papers) {
            const std::string id = normalize_title(title);
            auto [it, inserted] = first_seen.emplace(id, path);
            if (inserted || id.empty()) {
                kept.push_back(std::move(title));
                continue;
            }
            if (mode == ParseMode::strict) {
                violations.push_back({path, "duplicate paper \"" + title + "\" also under " + it->second});
                kept.push_back(std::move(title));
            } else {
                warnings.push_back(path + ": dropped duplicate paper \"" + title + "\" (kept under " + it->second + ")");
            }
        }
        n.papers = std::move(kept);
        for (auto& c : n.children) visit(c, path);
    };
    visit(root, "");
}

Taxonomy build(const json& doc, ParseMode mode, std::string survey_id, std::vector<Diagnostic>& violations) {
    Taxonomy t;
    t.survey_id = std::move(survey_id);
    Builder builder(mode, t.warnings, violations);

    if (doc.is_array()) {
        if (mode == ParseMode::strict || doc.empty()) {
            if (doc.empty()) builder.fatal("root", "top-level array has no nodes");
            violations.push_back({"root", "multiple root nodes (" + std::to_string(doc.size()) + ")"});
            t.root.label = t.survey_id.empty() ? "root" : t.survey_id;
            std::size_t i = 0;
            for (const auto& n : doc) t.root.children.push_back(builder.node(n, "", i++));
        } else if (doc.size() == 1) {
            t.warnings.push_back("root: single-element top-level array unwrapped");
            t.root = builder.node(doc.front(), "", 0);
        } else {
            t.root.label = t.survey_id.empty() ? "root" : t.survey_id;
            t.warnings.push_back("root: " + std::to_string(doc.size()) + " top-level nodes wrapped under synthetic root \"" +
                                 t.root.label + "\"");
            std::size_t i = 0;
            for (const auto& n : doc) t.root.children.push_back(builder.node(n, t.root.label, i++));
        }
    } else {
        t.root = builder.node(doc, "", 0);
    }

    check_duplicates(t.root, mode, t.warnings, violations);
    return t;
}

} // namespace

namespace detail {

Taxonomy taxonomy_from_json(const json& doc, ParseMode mode, std::string survey_id) {
    std::vector<Diagnostic> violations;
    Taxonomy t = build(doc, mode, std::move(survey_id), violations);
    if (!violations.empty()) {
        std::string what = "taxonomy violates " + std::to_string(violations.size()) + " constraint(s): " +
                           violations.front().path + ": " + violations.front().message;
        throw ValidationError(what, std::move(violations));
    }
    return t;
}

std::vector<Diagnostic> diagnose_json(const json& doc) {
    std::vector<Diagnostic> violations;
    try {
        build(doc, ParseMode::strict, {}, violations);
    } catch (const ValidationError& e) {
        return e.diagnostics().empty() ? std::vector<Diagnostic>{{"root", e.what()}} : e.diagnostics();
    }
    return violations;
}

json taxonomy_to_json(const CategoryNode& n) {
    json out = json::object();
    out["name"] = n.label;
    if (!n.children.empty()) {
        json subs = json::array();
        for (const auto& c : n.children) subs.push_back(taxonomy_to_json(c));
        out["subtopics"] = std::move(subs);
    }
    if (n.children.empty() || !n.papers.empty()) out["papers"] = n.papers;
    return out;
}

} // namespace detail

Taxonomy parse_taxonomy(std::string_view json_text, ParseMode mode, std::string survey_id) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what(), {{"", std::string("malformed JSON: ") + e.what()}});
    }
    return detail::taxonomy_from_json(doc, mode, std::move(survey_id));
}

std::vector<Diagnostic> validate_taxonomy(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        return {{"", std::string("malformed JSON: ") + e.what()}};
    }
    return detail::diagnose_json(doc);
}

namespace {

CategoryNode strip_papers(const CategoryNode& n) {
    CategoryNode out;
    out.label = n.label;
    out.children.reserve(n.children.size());
    for (const auto& c : n.children) out.children.push_back(strip_papers(c));
    return out;
}

template <typename Visit>
void preorder(const CategoryNode& n, std::size_t& counter, LabelPath& path, Visit&& visit) {
    const std::size_t id = counter++;
    path.push_back(n.label);
    visit(n, id, path);
    for (const auto& c : n.children) preorder(c, counter, path, visit);
    path.pop_back();
}

template <typename Visit>
void preorder(const CategoryNode& root, Visit&& visit) {
    std::size_t counter = 0;
    LabelPath path;
    preorder(root, counter, path, visit);
}

} // namespace

CategoryHierarchy hierarchy_of(const Taxonomy& t) { return {strip_papers(t.root)}; }

Taxonomy as_taxonomy(const CategoryHierarchy& h, std::string survey_id) {
    Taxonomy t;
    t.survey_id = std::move(survey_id);
    t.root = h.root;
    return t;
}

PaperAssignment assignment_of(const Taxonomy& t) {
    PaperAssignment out;
    preorder(t.root, [&](const CategoryNode& n, std::size_t id, const LabelPath&) {
        for (const auto& title : n.papers) {
            std::string key = normalize_title(title);
            if (!key.empty()) out.entries.emplace(std::move(key), id);
        }
    });
    return out;
}

std::map<std::string, std::vector<LabelPath>> ancestor_path_index(const Taxonomy& t) {
    std::map<std::string, std::vector<LabelPath>> out;
    preorder(t.root, [&](const CategoryNode& n, std::size_t, const LabelPath& path) {
        for (const auto& title : n.papers) {
            std::string key = normalize_title(title);
            if (key.empty()) continue;
            auto& paths = out[key];
            if (std::find(paths.begin(), paths.end(), path) == paths.end()) paths.push_back(path);
        }
    });
    return out;
}

std::vector<LabelPath> ancestor_paths(const Taxonomy& t, std::string_view paper_title) {
    const std::string key = normalize_title(paper_title);
    if (key.empty()) return {};
    std::vector<LabelPath> out;
    preorder(t.root, [&](const CategoryNode& n, std::size_t, const LabelPath& path) {
        for (const auto& title : n.papers) {
            if (normalize_title(title) == key && std::find(out.begin(), out.end(), path) == out.end())
                out.push_back(path);
        }
    });
    return out;
}

std::size_t subtree_size(const CategoryNode& n) {
    std::size_t size = 1;
    for (const auto& c : n.children) size += subtree_size(c);
    return size;
}

std::vector<std::string> paper_ids(const Taxonomy& t) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    preorder(t.root, [&](const CategoryNode& n, std::size_t, const LabelPath&) {
        for (const auto& title : n.papers) {
            std::string key = normalize_title(title);
            if (!key.empty() && seen.insert(key).second) out.push_back(std::move(key));
        }
    });
    return out;
}

std::vector<std::string> paper_titles(const Taxonomy& t) {
    std::vector<std::string> out;
    preorder(t.root, [&](const CategoryNode& n, std::size_t, const LabelPath&) {
        out.insert(out.end(), n.papers.begin(), n.papers.end());
    });
    return out;
}

std::vector<std::string> category_labels(const CategoryNode& root) {
    std::vector<std::string> out;
    preorder(root, [&](const CategoryNode& n, std::size_t, const LabelPath&) { out.push_back(n.label); });
    return out;
}

} // namespace taxoeval
