#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "taxoeval/taxonomy.hpp"

namespace taxoeval::detail {

Taxonomy taxonomy_from_json(const nlohmann::json& doc, ParseMode mode, std::string survey_id);
std::vector<Diagnostic> diagnose_json(const nlohmann::json& doc);
nlohmann::json taxonomy_to_json(const CategoryNode& n);

} // namespace taxoeval::detail
