#pragma once

#include <json.hpp>
#include <string>

#include "lrcw/bounds.hpp"
#include "lrcw/design.hpp"
#include "lrcw/erasure.hpp"
#include "lrcw/goppa.hpp"
#include "lrcw/gsd.hpp"
#include "lrcw/lrc.hpp"

namespace lrcw {

using json = nlohmann::ordered_json;

json field_to_json(const FiniteField& f);
Field field_from_json(const json& j);

json to_json(const EvaluationLayout& layout);
EvaluationLayout layout_from_json(const json& j);

json to_json(const ErasurePattern& pat);
ErasurePattern pattern_from_json(const json& j);

json to_json(const ArrayLayout& arr);
ArrayLayout array_from_json(const json& j);

json to_json(const GoppaParams& params);
GoppaParams goppa_from_json(const json& j);

json to_json(const DesignReport& rep);
json to_json(const LocalityReport& rep);
json to_json(const DistanceResult& res, bool with_counts = false);
json to_json(const GsdReport& rep);
json to_json(const GsdParamsReport& rep);
json to_json(const LengthBound& lb);
json to_json(const BoundReport& rep);
json to_json(const GoppaDistanceReport& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace lrcw
