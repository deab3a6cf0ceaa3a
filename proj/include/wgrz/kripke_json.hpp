#pragma once

// JSON form of frames and models:
//
//   {"worlds": ["base:L0:{}:#0", ...],
//    "relation": [["base:L0:{}:#0", "base:L1:{1}:#1"], ...],
//    "valuation": {"p1": [...], "p2": [...]},
//    "root": "base:L0:{}:#0"}
//
// Worlds keep frame order, relation pairs are sorted by (from, to) position,
// valuation keys are in increasing variable order. Frames omit "valuation"
// and "root".

#include <string>
#include <string_view>

#include "json.hpp"
#include "wgrz/kripke.hpp"

namespace wgrz {

nlohmann::ordered_json frame_to_json(const KripkeFrame& frame);
nlohmann::ordered_json model_to_json(const KripkeModel& model);

KripkeFrame frame_from_json(const nlohmann::json& doc);
KripkeModel model_from_json(const nlohmann::json& doc);

// Two-space indented text with a trailing newline.
std::string dump_json(const nlohmann::ordered_json& doc);

}  // namespace wgrz
