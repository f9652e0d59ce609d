#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "taxoeval/taxonomy.hpp"

namespace taxoeval {

/// Folders become categories, regular files become papers (file stem = title).
/// Hidden entries are skipped; entries are visited in sorted order.
Taxonomy read_taxonomy_directory(const std::filesystem::path& dir, ParseMode mode);

/// A `.json` file, or a directory in the folder/file layout.
/// The survey id defaults to the file stem or directory name.
Taxonomy load_taxonomy(const std::filesystem::path& path, ParseMode mode);

/// Strict-mode constraint check of a file or directory; never throws on bad input.
std::vector<Diagnostic> validate_taxonomy_path(const std::filesystem::path& path);

/// Serialize back to the input JSON shape, two-space indented.
std::string to_json_text(const Taxonomy& t);

void write_taxonomy_file(const Taxonomy& t, const std::filesystem::path& path);

} // namespace taxoeval
