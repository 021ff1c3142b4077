#pragma once

#include <json.hpp>

#include "gridmix/design.hpp"

namespace gridmix {

/// Builds a design from an already-parsed JSON object. Same checks as
/// parse_design, without line/column information.
GridDesign design_from_json(const nlohmann::json& j);

/// Schema-ordered JSON object for a design.
nlohmann::ordered_json design_to_json(const GridDesign& design);

/// 1-based line and column of a byte offset into `text`.
std::pair<int, int> line_column(std::string_view text, std::size_t offset);

}  // namespace gridmix
