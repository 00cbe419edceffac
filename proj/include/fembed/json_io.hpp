#pragma once

#include "fembed/series.hpp"

#include <json.hpp>

namespace fembed {

// Serialization uses ordered_json everywhere so emitted documents are
// byte-stable: object keys appear in construction order, term lists follow
// the graded lexicographic order of the underlying maps, and every scalar is
// an exact "p/q" string or an integer. No floating point is ever emitted.
using Json = nlohmann::ordered_json;

Json zpoly_to_json(const ZPoly& p);
ZPoly zpoly_from_json(const nlohmann::json& j, const std::string& where);

Json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const nlohmann::json& j, const std::string& where);

Json zpolyvec_to_json(const ZPolyVec& v);
ZPolyVec zpolyvec_from_json(const nlohmann::json& j, std::uint32_t expect_vars,
                            const std::string& where);

MultiIndex multi_index_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace fembed
