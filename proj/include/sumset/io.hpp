#pragma once

// JSON readers and writers for the shared file formats. Parse failures raise
// InputError naming the offending field path (e.g. "primitives[1].box.lo[0]")
// or, for malformed text, the line and column.
//
//   set:        {"dim": d, "q": q, "primitives": [{"box": {"lo": [..], "hi": [..]}}
//                                                 | {"cells": [[..], ..]} | {"point": [..]}]}
//   intervals:  {"parts": [["p/q", "r/s"], ..]}
//   polytope:   {"dim": d, "vertices": [[..], ..]}

#include <string>
#include <vector>

#include "sumset/grid_set.hpp"
#include "sumset/hull.hpp"
#include "sumset/intervals.hpp"
#include "sumset/positioning.hpp"
#include "sumset/rational.hpp"
#include "sumset/verdict.hpp"

namespace sumset {

struct SetDefinition {
  GridSet grid{1, 1};
  /// Measure-zero point primitives; only hull and sharp-family consumers accept them.
  std::vector<RationalVector> points;

  /// The grid part; throws InputError if any point primitive is present.
  const GridSet& require_grid(const std::string& what) const;
};

std::string read_text(const std::string& path);
/// Parses text, reporting syntax errors with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json(const std::string& path);

SetDefinition set_from_json(const Json& j, const Limits& limits = {});
Json to_json(const GridSet& s);

IntervalSet intervals_from_json(const Json& j);
Json to_json(const IntervalSet& s);

Polytope polytope_from_json(const Json& j);
Json to_json(const Polytope& p);

Json to_json(const AffineMap& m);
Json to_json(const PositioningCertificate& c);
PositioningCertificate certificate_from_json(const Json& j);

Json to_json(const RationalVector& v);
RationalVector vector_from_json(const Json& j, const std::string& path);
Rational rational_from_json(const Json& j, const std::string& path);

bool is_interval_json(const Json& j);
bool is_polytope_json(const Json& j);

}  // namespace sumset
