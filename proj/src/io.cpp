#include "sumset/io.hpp"

#include <fstream>
#include <sstream>

namespace sumset {

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) field_error(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) field_error(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

std::int64_t int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array");
  return j;
}

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

}  // namespace

const GridSet& SetDefinition::require_grid(const std::string& what) const {
  if (!points.empty()) {
    throw InputError(what + " does not accept point primitives (measure-zero points are not grid cells)");
  }
  return grid;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ": malformed JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
}

Json read_json(const std::string& path) { return parse_json_text(read_text(path), path); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) field_error(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    field_error(path, e.what());
  }
}

RationalVector vector_from_json(const Json& j, const std::string& path) {
  RationalVector v;
  for (std::size_t i = 0; i < array_at(j, path).size(); ++i) v.push_back(rational_from_json(j[i], index_path(path, i)));
  return v;
}

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

SetDefinition set_from_json(const Json& j, const Limits& limits) {
  only_keys(j, {"dim", "q", "primitives", "volume"}, "");
  const auto dim = int_from_json(member(j, "dim", ""), "dim");
  const auto q = int_from_json(member(j, "q", ""), "q");
  if (dim < 1) field_error("dim", "must be a positive integer");
  if (q < 1) field_error("q", "must be a positive integer");
  if (q > limits.max_resolution) {
    throw CapacityError("q: resolution " + std::to_string(q) + " exceeds the cap " +
                        std::to_string(limits.max_resolution));
  }
  const auto d = static_cast<std::size_t>(dim);
  SetDefinition out{GridSet(static_cast<int>(dim), q), {}};
  std::vector<std::int64_t> flat;
  const Json& prims = array_at(member(j, "primitives", ""), "primitives");
  for (std::size_t i = 0; i < prims.size(); ++i) {
    const std::string path = index_path("primitives", i);
    const Json& p = prims[i];
    if (!p.is_object() || p.size() != 1) field_error(path, "expected exactly one of box, cells, point");
    if (p.contains("box")) {
      const Json& box = p["box"];
      only_keys(box, {"lo", "hi"}, path + ".box");
      RationalVector lo = vector_from_json(member(box, "lo", path + ".box"), path + ".box.lo");
      RationalVector hi = vector_from_json(member(box, "hi", path + ".box"), path + ".box.hi");
      if (lo.size() != d || hi.size() != d) field_error(path + ".box", "expected " + std::to_string(d) + " coordinates");
      try {
        GridSet block = GridSet::box(q, lo, hi);
        const auto& cells = block.flat();
        if ((flat.size() + cells.size()) / d > limits.max_cells) {
          throw CapacityError(path + ": set exceeds the cell cap of " + std::to_string(limits.max_cells));
        }
        flat.insert(flat.end(), cells.begin(), cells.end());
      } catch (const CapacityError&) {
        throw;
      } catch (const InputError& e) {
        field_error(path + ".box", e.what());
      }
    } else if (p.contains("cells")) {
      const Json& cells = array_at(p["cells"], path + ".cells");
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::string cpath = index_path(path + ".cells", c);
        const Json& cell = array_at(cells[c], cpath);
        if (cell.size() != d) field_error(cpath, "expected " + std::to_string(d) + " integers");
        for (std::size_t k = 0; k < d; ++k) flat.push_back(int_from_json(cell[k], index_path(cpath, k)));
      }
      if (flat.size() / d > limits.max_cells) {
        throw CapacityError(path + ": set exceeds the cell cap of " + std::to_string(limits.max_cells));
      }
    } else if (p.contains("point")) {
      RationalVector v = vector_from_json(p["point"], path + ".point");
      if (v.size() != d) field_error(path + ".point", "expected " + std::to_string(d) + " coordinates");
      out.points.push_back(std::move(v));
    } else {
      field_error(path, "expected exactly one of box, cells, point");
    }
  }
  out.grid = GridSet(static_cast<int>(dim), q, std::move(flat));
  if (j.contains("volume")) {
    Rational declared = rational_from_json(j["volume"], "volume");
    if (declared != volume(out.grid)) {
      field_error("volume", "declared " + to_string(declared) + " but the cells give " + to_string(volume(out.grid)));
    }
  }
  return out;
}

Json to_json(const GridSet& s) {
  Json cells = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = s.cell(i);
    cells.push_back(Json(std::vector<std::int64_t>(c.begin(), c.end())));
  }
  Json prims = Json::array();
  prims.push_back({{"cells", cells}});
  return {{"dim", s.dim()}, {"q", s.resolution()}, {"volume", to_string(volume(s))}, {"primitives", prims}};
}

bool is_interval_json(const Json& j) { return j.is_object() && j.contains("parts"); }
bool is_polytope_json(const Json& j) { return j.is_object() && j.contains("vertices"); }

IntervalSet intervals_from_json(const Json& j) {
  only_keys(j, {"parts", "measure"}, "");
  const Json& parts = array_at(member(j, "parts", ""), "parts");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string path = index_path("parts", i);
    const Json& p = array_at(parts[i], path);
    if (p.size() != 2) field_error(path, "expected [lo, hi]");
    Rational lo = rational_from_json(p[0], path + "[0]"), hi = rational_from_json(p[1], path + "[1]");
    if (lo > hi) field_error(path, "lo > hi");
    out.push_back({lo, hi});
  }
  return IntervalSet(std::move(out));
}

Json to_json(const IntervalSet& s) {
  Json parts = Json::array();
  for (const auto& p : s.parts()) parts.push_back(Json::array({to_string(p.lo), to_string(p.hi)}));
  return {{"parts", parts}, {"measure", to_string(s.measure())}};
}

Polytope polytope_from_json(const Json& j) {
  only_keys(j, {"dim", "vertices", "volume"}, "");
  const auto dim = int_from_json(member(j, "dim", ""), "dim");
  if (dim < 1) field_error("dim", "must be a positive integer");
  const Json& verts = array_at(member(j, "vertices", ""), "vertices");
  std::vector<RationalVector> pts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    RationalVector v = vector_from_json(verts[i], index_path("vertices", i));
    if (static_cast<std::int64_t>(v.size()) != dim) field_error(index_path("vertices", i), "wrong number of coordinates");
    pts.push_back(std::move(v));
  }
  if (pts.empty()) field_error("vertices", "needs at least one point");
  return hull_of(static_cast<int>(dim), pts);
}

Json to_json(const Polytope& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices) verts.push_back(to_json(v));
  return {{"dim", p.dim}, {"vertices", verts}, {"volume", to_string(hull_volume(p))}};
}

Json to_json(const AffineMap& m) {
  Json rows = Json::array();
  for (const auto& row : m.linear) rows.push_back(to_json(row));
  return {{"linear", rows}, {"offset", to_json(m.offset)}, {"det", to_string(m.det())}};
}

Json to_json(const PositioningCertificate& c) {
  Json points = Json::array(), lambdas = Json::array(), planes = Json::array();
  for (const auto& p : c.points) points.push_back({{"p", to_json(p.p)}, {"in_u", p.in_u}});
  for (const auto& l : c.lambdas) lambdas.push_back(to_string(l));
  for (const auto& h : c.hyperplanes) planes.push_back({{"normal", to_json(h.normal)}, {"offset", to_string(h.offset)}});
  return {{"u", to_json(c.u)}, {"v", to_json(c.v)}, {"points", points}, {"lambdas", lambdas}, {"hyperplanes", planes}};
}

PositioningCertificate certificate_from_json(const Json& j) {
  PositioningCertificate c;
  c.u = polytope_from_json(member(j, "u", ""));
  c.v = polytope_from_json(member(j, "v", ""));
  const Json& points = array_at(member(j, "points", ""), "points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string path = index_path("points", i);
    const Json& in_u = member(points[i], "in_u", path);
    if (!in_u.is_boolean()) field_error(path + ".in_u", "expected a boolean");
    c.points.push_back({vector_from_json(member(points[i], "p", path), path + ".p"), in_u.get<bool>()});
  }
  const Json& lambdas = array_at(member(j, "lambdas", ""), "lambdas");
  for (std::size_t i = 0; i < lambdas.size(); ++i) c.lambdas.push_back(rational_from_json(lambdas[i], index_path("lambdas", i)));
  const Json& planes = array_at(member(j, "hyperplanes", ""), "hyperplanes");
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const std::string path = index_path("hyperplanes", i);
    c.hyperplanes.push_back({vector_from_json(member(planes[i], "normal", path), path + ".normal"),
                             rational_from_json(member(planes[i], "offset", path), path + ".offset")});
  }
  return c;
}

}  // namespace sumset
