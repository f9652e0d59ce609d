#include "taxoeval/taxonomy_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "taxoeval/detail/taxonomy_json.hpp"

namespace taxoeval {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool hidden(const fs::path& p) {
    const std::string name = p.filename().string();
    return !name.empty() && name.front() == '.';
}

json directory_node(const fs::path& dir) {
    std::vector<fs::path> subdirs, files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (hidden(entry.path())) continue;
        if (entry.is_directory()) subdirs.push_back(entry.path());
        else if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(subdirs.begin(), subdirs.end());
    std::sort(files.begin(), files.end());

    json node = json::object();
    node["name"] = dir.filename().string();
    if (!subdirs.empty()) {
        json subs = json::array();
        for (const auto& d : subdirs) subs.push_back(directory_node(d));
        node["subtopics"] = std::move(subs);
    }
    if (!files.empty() || subdirs.empty()) {
        json papers = json::array();
        for (const auto& f : files) papers.push_back(f.stem().string());
        node["papers"] = std::move(papers);
    }
    return node;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Taxonomy read_taxonomy_directory(const fs::path& dir, ParseMode mode) {
    fs::path clean = dir;
    if (!clean.has_filename()) clean = clean.parent_path();
    if (!fs::is_directory(clean)) throw ValidationError("not a directory: " + dir.string());
    return detail::taxonomy_from_json(directory_node(clean), mode, clean.filename().string());
}

Taxonomy load_taxonomy(const fs::path& path, ParseMode mode) {
    if (fs::is_directory(path)) return read_taxonomy_directory(path, mode);
    return parse_taxonomy(read_file(path), mode, path.stem().string());
}

std::vector<Diagnostic> validate_taxonomy_path(const fs::path& path) {
    try {
        if (fs::is_directory(path)) return detail::diagnose_json(directory_node(path));
        return validate_taxonomy(read_file(path));
    } catch (const std::exception& e) {
        return {{path.string(), e.what()}};
    }
}

std::string to_json_text(const Taxonomy& t) { return detail::taxonomy_to_json(t.root).dump(2) + "\n"; }

void write_taxonomy_file(const Taxonomy& t, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << to_json_text(t);
}

} // namespace taxoeval
