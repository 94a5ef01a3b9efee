#include "tilesim/io.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace tilesim {

namespace {

using json = nlohmann::ordered_json;

std::string at_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void schema_error(std::vector<Diagnostic>& diags, const std::string& path,
                  const std::string& what) {
  diags.push_back({DiagCode::SchemaViolation, path + ": " + what});
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed,
                std::vector<Diagnostic>& diags) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) schema_error(diags, path, "unknown key \"" + item.key() + "\"");
  }
}

bool get_i64(const json& j, const std::string& path, std::int64_t& out,
             std::vector<Diagnostic>& diags) {
  if (!j.is_number_integer()) {
    schema_error(diags, path, "expected an integer");
    return false;
  }
  if (j.is_number_unsigned() &&
      j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    schema_error(diags, path, "integer out of range");
    return false;
  }
  out = j.get<std::int64_t>();
  return true;
}

bool get_int(const json& j, const std::string& path, int& out,
             std::vector<Diagnostic>& diags) {
  std::int64_t v = 0;
  if (!get_i64(j, path, v, diags)) return false;
  if (v < INT_MIN || v > INT_MAX) {
    schema_error(diags, path, "integer out of range");
    return false;
  }
  out = static_cast<int>(v);
  return true;
}

bool get_string(const json& j, const std::string& path, std::string& out,
                std::vector<Diagnostic>& diags) {
  if (!j.is_string()) {
    schema_error(diags, path, "expected a string");
    return false;
  }
  out = j.get<std::string>();
  return true;
}

// Parses the raw text and checks the document envelope: a JSON object whose
// schema_version is supported and whose "kind", if present, matches.
std::optional<json> parse_envelope(const std::string& text, const char* kind,
                                   std::vector<Diagnostic>& diags) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    diags.push_back({DiagCode::SyntaxError,
                     "invalid JSON at " + at_byte(text, e.byte)});
    return std::nullopt;
  }
  if (!j.is_object()) {
    schema_error(diags, "document", "expected a JSON object");
    return std::nullopt;
  }
  if (!j.contains("schema_version")) {
    schema_error(diags, "document", "missing \"schema_version\"");
  } else {
    std::int64_t ver = 0;
    if (get_i64(j["schema_version"], "schema_version", ver, diags) &&
        ver != kSchemaVersion) {
      schema_error(diags, "schema_version",
                   "unsupported version " + std::to_string(ver));
    }
  }
  if (j.contains("kind")) {
    std::string k;
    if (get_string(j["kind"], "kind", k, diags) && k != kind) {
      schema_error(diags, "kind",
                   "expected \"" + std::string(kind) + "\", got \"" + k + "\"");
    }
  }
  return j;
}

bool parse_glue(const json& j, const std::string& path, Glue& out,
                std::vector<Diagnostic>& diags) {
  if (!j.is_array() || j.size() != 2) {
    schema_error(diags, path, "expected a [label, strength] pair");
    return false;
  }
  std::string label;
  int strength = 0;
  bool ok = get_string(j[0], path + "[0]", label, diags);
  ok = get_int(j[1], path + "[1]", strength, diags) && ok;
  if (ok) out = {std::move(label), strength};
  return ok;
}

// Parses one {x, y, tile} object and resolves the tile name. Used for seed
// lists, assembly snapshots and trace starts.
bool parse_cell(const json& j, const std::string& path, const TileSet& ts,
                Cell& out, std::vector<Diagnostic>& diags,
                std::initializer_list<const char*> allowed = {"x", "y",
                                                              "tile"}) {
  if (!j.is_object()) {
    schema_error(diags, path, "expected an object");
    return false;
  }
  check_keys(j, path, allowed, diags);
  bool ok = true;
  for (const char* k : {"x", "y", "tile"}) {
    if (!j.contains(k)) {
      schema_error(diags, path, "missing \"" + std::string(k) + "\"");
      ok = false;
    }
  }
  if (!ok) return false;
  Pos p;
  ok = get_i64(j["x"], path + ".x", p.x, diags);
  ok = get_i64(j["y"], path + ".y", p.y, diags) && ok;
  std::string name;
  if (!get_string(j["tile"], path + ".tile", name, diags)) return false;
  if (!ok) return false;
  auto idx = ts.find(name);
  if (!idx) {
    diags.push_back({DiagCode::UnknownSeedTile,
                     path + ": unknown tile type \"" + name + "\""});
    return false;
  }
  out = {p, static_cast<TileIndex>(*idx)};
  return true;
}

// Reports duplicates among cell positions. Returns true when all distinct.
bool distinct_positions(std::vector<Cell> cells, const std::string& path,
                        std::vector<Diagnostic>& diags, DiagCode code) {
  std::sort(cells.begin(), cells.end());
  bool ok = true;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].pos == cells[i - 1].pos) {
      diags.push_back(
          {code, path + ": duplicate position " + to_string(cells[i].pos)});
      ok = false;
    }
  }
  return ok;
}

json cell_json(const Cell& c, const TileSet& ts) {
  return json{{"x", c.pos.x}, {"y", c.pos.y}, {"tile", ts.tile(c.tile).name}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f",
                                    "#e15759", "#b07aa1", "#edc948",
                                    "#76b7b2", "#ff9da7"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string tile_color(const TileType& t, std::size_t index) {
  if (!t.display.color.empty()) return t.display.color;
  return kPalette[index % kPaletteSize];
}

std::string tile_glyph(const TileType& t) {
  if (!t.display.glyph.empty()) return t.display.glyph.substr(0, 1);
  if (t.name.empty()) return "?";
  return t.name.substr(0, 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Tileset documents
// ---------------------------------------------------------------------------

TilesetParse parse_tileset(const std::string& text) {
  TilesetParse out;
  auto& diags = out.diagnostics;
  auto root = parse_envelope(text, "tileset", diags);
  if (!root) return out;
  const json& j = *root;
  check_keys(j, "document",
             {"schema_version", "kind", "name", "description", "temperature",
              "tiles", "seed"},
             diags);

  std::string name;
  std::string description;
  if (j.contains("name")) get_string(j["name"], "name", name, diags);
  if (j.contains("description")) {
    get_string(j["description"], "description", description, diags);
  }

  int temperature = 0;
  if (!j.contains("temperature")) {
    schema_error(diags, "document", "missing \"temperature\"");
  } else {
    get_int(j["temperature"], "temperature", temperature, diags);
  }

  std::vector<TileType> tiles;
  if (!j.contains("tiles")) {
    schema_error(diags, "document", "missing \"tiles\"");
  } else if (!j["tiles"].is_array()) {
    schema_error(diags, "tiles", "expected an array");
  } else {
    for (std::size_t i = 0; i < j["tiles"].size(); ++i) {
      const json& jt = j["tiles"][i];
      const std::string path = "tiles[" + std::to_string(i) + "]";
      if (!jt.is_object()) {
        schema_error(diags, path, "expected an object");
        continue;
      }
      check_keys(jt, path,
                 {"name", "north", "east", "south", "west", "display"}, diags);
      TileType t;
      if (!jt.contains("name")) {
        schema_error(diags, path, "missing \"name\"");
      } else {
        get_string(jt["name"], path + ".name", t.name, diags);
      }
      for (Dir d : kAllDirs) {
        const char* key = dir_name(d);
        if (!jt.contains(key)) continue;
        parse_glue(jt[key], path + "." + key, t.glue(d), diags);
      }
      if (jt.contains("display")) {
        const json& jd = jt["display"];
        const std::string dpath = path + ".display";
        if (!jd.is_object()) {
          schema_error(diags, dpath, "expected an object");
        } else {
          check_keys(jd, dpath, {"glyph", "color"}, diags);
          if (jd.contains("glyph")) {
            std::string g;
            if (get_string(jd["glyph"], dpath + ".glyph", g, diags)) {
              if (g.size() != 1) {
                schema_error(diags, dpath + ".glyph",
                             "expected a single character");
              } else {
                t.display.glyph = g;
              }
            }
          }
          if (jd.contains("color")) {
            get_string(jd["color"], dpath + ".color", t.display.color, diags);
          }
        }
      }
      tiles.push_back(std::move(t));
    }
  }
  TileSet ts(std::move(tiles));

  std::vector<Cell> cells;
  if (!j.contains("seed")) {
    schema_error(diags, "document", "missing \"seed\"");
  } else if (!j["seed"].is_array()) {
    schema_error(diags, "seed", "expected an array");
  } else {
    for (std::size_t i = 0; i < j["seed"].size(); ++i) {
      Cell c;
      if (parse_cell(j["seed"][i], "seed[" + std::to_string(i) + "]", ts, c,
                     diags)) {
        cells.push_back(c);
      }
    }
    distinct_positions(cells, "seed", diags, DiagCode::DuplicateSeedPosition);
  }

  if (!diags.empty()) return out;  // never a partial TAS

  TilesetDoc doc;
  doc.tas = {std::move(ts), Assembly::from_cells(std::move(cells)),
             temperature};
  doc.name = std::move(name);
  doc.description = std::move(description);
  auto findings = validate_tas(doc.tas);
  diags.insert(diags.end(), findings.begin(), findings.end());
  out.doc = std::move(doc);
  return out;
}

std::string serialize_tileset(const TilesetDoc& doc) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "tileset";
  if (!doc.name.empty()) j["name"] = doc.name;
  if (!doc.description.empty()) j["description"] = doc.description;
  j["temperature"] = doc.tas.temperature;
  json tiles = json::array();
  for (const TileType& t : doc.tas.tileset.tiles()) {
    json jt;
    jt["name"] = t.name;
    for (Dir d : kAllDirs) {
      const Glue& g = t.glue(d);
      if (g == kNullGlue) continue;
      jt[dir_name(d)] = json::array({g.label, g.strength});
    }
    if (!t.display.glyph.empty() || !t.display.color.empty()) {
      json jd;
      if (!t.display.glyph.empty()) jd["glyph"] = t.display.glyph;
      if (!t.display.color.empty()) jd["color"] = t.display.color;
      jt["display"] = jd;
    }
    tiles.push_back(std::move(jt));
  }
  j["tiles"] = std::move(tiles);
  json seed = json::array();
  for (const Cell& c : doc.tas.seed.cells()) {
    seed.push_back(cell_json(c, doc.tas.tileset));
  }
  j["seed"] = std::move(seed);
  return dump(j);
}

// ---------------------------------------------------------------------------
// Shape documents
// ---------------------------------------------------------------------------

ShapeParse parse_shape(const std::string& text) {
  ShapeParse out;
  auto& diags = out.diagnostics;
  auto root = parse_envelope(text, "shape", diags);
  if (!root) return out;
  const json& j = *root;
  check_keys(j, "document",
             {"schema_version", "kind", "points", "grid", "origin"}, diags);

  const bool has_points = j.contains("points");
  const bool has_grid = j.contains("grid");
  if (has_points == has_grid) {
    schema_error(diags, "document",
                 "exactly one of \"points\" and \"grid\" is required");
    return out;
  }

  std::vector<Pos> pts;
  if (has_points) {
    if (!j["points"].is_array()) {
      schema_error(diags, "points", "expected an array");
      return out;
    }
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
      const json& jp = j["points"][i];
      const std::string path = "points[" + std::to_string(i) + "]";
      if (!jp.is_object()) {
        schema_error(diags, path, "expected an object");
        continue;
      }
      check_keys(jp, path, {"x", "y"}, diags);
      if (!jp.contains("x") || !jp.contains("y")) {
        schema_error(diags, path, "missing \"x\" or \"y\"");
        continue;
      }
      Pos p;
      bool ok = get_i64(jp["x"], path + ".x", p.x, diags);
      ok = get_i64(jp["y"], path + ".y", p.y, diags) && ok;
      if (ok) pts.push_back(p);
    }
  } else {
    Pos origin{0, 0};
    if (j.contains("origin")) {
      const json& jo = j["origin"];
      if (!jo.is_object() || !jo.contains("x") || !jo.contains("y")) {
        schema_error(diags, "origin", "expected an object with x and y");
      } else {
        check_keys(jo, "origin", {"x", "y"}, diags);
        get_i64(jo["x"], "origin.x", origin.x, diags);
        get_i64(jo["y"], "origin.y", origin.y, diags);
      }
    }
    if (!j["grid"].is_array()) {
      schema_error(diags, "grid", "expected an array of strings");
      return out;
    }
    std::vector<std::string> rows;
    for (std::size_t r = 0; r < j["grid"].size(); ++r) {
      std::string row;
      if (get_string(j["grid"][r], "grid[" + std::to_string(r) + "]", row,
                     diags)) {
        rows.push_back(std::move(row));
      }
    }
    // Exactly one '@' pins the grid to the origin; rows run top to bottom
    // (decreasing y).
    std::optional<std::pair<std::size_t, std::size_t>> anchor;
    bool anchor_dup = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        char ch = rows[r][c];
        if (ch == '@') {
          if (anchor) anchor_dup = true;
          anchor = {r, c};
        } else if (ch != '#' && ch != '.') {
          schema_error(diags, "grid[" + std::to_string(r) + "]",
                       std::string("invalid character '") + ch + "'");
        }
      }
    }
    if (!anchor || anchor_dup) {
      schema_error(diags, "grid", "expected exactly one '@' anchor");
    } else {
      const auto [ar, ac] = *anchor;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
          char ch = rows[r][c];
          if (ch != '#' && ch != '@') continue;
          Pos p;
          p.x = origin.x + (static_cast<Coord>(c) - static_cast<Coord>(ac));
          p.y = origin.y + (static_cast<Coord>(ar) - static_cast<Coord>(r));
          pts.push_back(p);
        }
      }
    }
  }

  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] == pts[i - 1]) {
      diags.push_back({DiagCode::InvalidShape,
                       "duplicate point " + to_string(pts[i])});
    }
  }
  if (pts.empty()) {
    diags.push_back({DiagCode::InvalidShape, "shape has no points"});
  }
  if (!diags.empty()) return out;
  out.points = std::move(pts);
  return out;
}

std::string serialize_shape(std::vector<Pos> points) {
  std::sort(points.begin(), points.end());
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "shape";
  json arr = json::array();
  for (const Pos& p : points) arr.push_back(json{{"x", p.x}, {"y", p.y}});
  j["points"] = std::move(arr);
  return dump(j);
}

// ---------------------------------------------------------------------------
// Assembly snapshots and traces
// ---------------------------------------------------------------------------

namespace {

// Shared by snapshot "cells" and trace "start".
std::optional<Assembly> parse_cell_list(const json& j, const std::string& path,
                                        const TileSet& ts,
                                        std::vector<Diagnostic>& diags) {
  if (!j.is_array()) {
    schema_error(diags, path, "expected an array");
    return std::nullopt;
  }
  std::vector<Cell> cells;
  bool ok = true;
  for (std::size_t i = 0; i < j.size(); ++i) {
    Cell c;
    if (parse_cell(j[i], path + "[" + std::to_string(i) + "]", ts, c, diags)) {
      cells.push_back(c);
    } else {
      ok = false;
    }
  }
  ok = distinct_positions(cells, path, diags, DiagCode::SchemaViolation) && ok;
  if (!ok) return std::nullopt;
  return Assembly::from_cells(std::move(cells));
}

}  // namespace

AssemblyParse parse_assembly(const std::string& text, const TileSet& ts) {
  AssemblyParse out;
  auto& diags = out.diagnostics;
  auto root = parse_envelope(text, "assembly", diags);
  if (!root) return out;
  const json& j = *root;
  check_keys(j, "document", {"schema_version", "kind", "cells"}, diags);
  if (!j.contains("cells")) {
    schema_error(diags, "document", "missing \"cells\"");
    return out;
  }
  auto a = parse_cell_list(j["cells"], "cells", ts, diags);
  if (!diags.empty() || !a) return out;
  out.assembly = std::move(*a);
  return out;
}

std::string serialize_assembly(const Assembly& a, const TileSet& ts) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "assembly";
  json cells = json::array();
  for (const Cell& c : a.cells()) cells.push_back(cell_json(c, ts));
  j["cells"] = std::move(cells);
  return dump(j);
}

TraceParse parse_trace(const std::string& text, const TileSet& ts) {
  TraceParse out;
  auto& diags = out.diagnostics;
  auto root = parse_envelope(text, "trace", diags);
  if (!root) return out;
  const json& j = *root;
  check_keys(j, "document", {"schema_version", "kind", "start", "steps"},
             diags);
  if (!j.contains("start") || !j.contains("steps")) {
    schema_error(diags, "document", "missing \"start\" or \"steps\"");
    return out;
  }
  auto start = parse_cell_list(j["start"], "start", ts, diags);
  std::vector<Attachment> steps;
  if (!j["steps"].is_array()) {
    schema_error(diags, "steps", "expected an array");
  } else {
    for (std::size_t i = 0; i < j["steps"].size(); ++i) {
      const std::string path = "steps[" + std::to_string(i) + "]";
      Cell c;
      if (!parse_cell(j["steps"][i], path, ts, c, diags,
                      {"x", "y", "tile", "bound_strength"})) {
        continue;
      }
      Attachment step{c.pos, c.tile, 0};
      if (!j["steps"][i].contains("bound_strength")) {
        schema_error(diags, path, "missing \"bound_strength\"");
        continue;
      }
      if (get_i64(j["steps"][i]["bound_strength"], path + ".bound_strength",
                  step.bound_strength, diags)) {
        steps.push_back(step);
      }
    }
  }
  if (!diags.empty() || !start) return out;
  out.sequence = AssemblySequence{std::move(*start), std::move(steps)};
  return out;
}

std::string serialize_trace(const AssemblySequence& s, const TileSet& ts) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "trace";
  json start = json::array();
  for (const Cell& c : s.start.cells()) start.push_back(cell_json(c, ts));
  j["start"] = std::move(start);
  json steps = json::array();
  for (const Attachment& a : s.steps) {
    json js = cell_json({a.position, a.tile}, ts);
    js["bound_strength"] = a.bound_strength;
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return dump(j);
}

std::string serialize_graph(const AssemblyGraph& g, const TileSet& ts) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "graph";
  j["node_count"] = g.nodes.size();
  j["edge_count"] = g.edges.size();
  j["terminal_count"] = g.terminal_count();
  j["truncated"] = g.truncated_any();
  j["budget_exceeded"] = g.budget_exceeded;
  json nodes = json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    json jn;
    jn["id"] = i;
    jn["terminal"] = n.terminal;
    jn["truncated"] = n.truncated;
    json cells = json::array();
    for (const Cell& c : n.assembly.cells()) cells.push_back(cell_json(c, ts));
    jn["cells"] = std::move(cells);
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& e : g.edges) {
    json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["x"] = e.attachment.position.x;
    je["y"] = e.attachment.position.y;
    je["tile"] = ts.tile(e.attachment.tile).name;
    je["bound_strength"] = e.attachment.bound_strength;
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return dump(j);
}

// ---------------------------------------------------------------------------
// Renderers
// ---------------------------------------------------------------------------

std::string render_ascii(const Assembly& a, const TileSet& ts, bool color) {
  // Bounding box of the assembly, extended to include the origin so that
  // coordinates stay readable across renders of a growing assembly.
  Coord min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (const Cell& c : a.cells()) {
    min_x = std::min(min_x, c.pos.x);
    max_x = std::max(max_x, c.pos.x);
    min_y = std::min(min_y, c.pos.y);
    max_y = std::max(max_y, c.pos.y);
  }
  std::string out;
  for (Coord y = max_y; y >= min_y; --y) {
    for (Coord x = min_x; x <= max_x; ++x) {
      auto tile = a.tile_at({x, y});
      if (!tile) {
        out += '.';
        continue;
      }
      const TileType& t = ts.tile(*tile);
      if (color) {
        static constexpr int kAnsi[] = {33, 208, 40, 199, 45, 220, 129, 196};
        out += "\x1b[38;5;" +
               std::to_string(kAnsi[*tile % (sizeof(kAnsi) / sizeof(int))]) +
               "m" + tile_glyph(t) + "\x1b[0m";
      } else {
        out += tile_glyph(t);
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_svg(const Assembly& a, const TileSet& ts) {
  constexpr Coord kCell = 32;
  Coord min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const Cell& c : a.cells()) {
    if (first) {
      min_x = max_x = c.pos.x;
      min_y = max_y = c.pos.y;
      first = false;
    } else {
      min_x = std::min(min_x, c.pos.x);
      max_x = std::max(max_x, c.pos.x);
      min_y = std::min(min_y, c.pos.y);
      max_y = std::max(max_y, c.pos.y);
    }
  }
  const Coord width = (max_x - min_x + 1) * kCell;
  const Coord height = (max_y - min_y + 1) * kCell;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  for (const Cell& c : a.cells()) {
    const TileType& t = ts.tile(c.tile);
    const Coord px = (c.pos.x - min_x) * kCell;
    const Coord py = (max_y - c.pos.y) * kCell;
    svg << "  <rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << kCell
        << "\" height=\"" << kCell << "\" fill=\""
        << xml_escape(tile_color(t, c.tile)) << "\" stroke=\"#333\"/>\n";
    for (Dir d : kAllDirs) {
      const int s = t.glue(d).strength;
      if (t.glue(d).is_null() || s <= 0) continue;
      const int ticks = std::min(s, 4);
      for (int i = 0; i < ticks; ++i) {
        // Tick offsets centered on the edge midpoint, 6px apart.
        const Coord off = 6 * i - 3 * (ticks - 1);
        Coord x1 = 0, y1 = 0, x2 = 0, y2 = 0;
        switch (d) {
          case Dir::North:
            x1 = x2 = px + kCell / 2 + off;
            y1 = py;
            y2 = py + 6;
            break;
          case Dir::South:
            x1 = x2 = px + kCell / 2 + off;
            y1 = py + kCell - 6;
            y2 = py + kCell;
            break;
          case Dir::East:
            x1 = px + kCell - 6;
            x2 = px + kCell;
            y1 = y2 = py + kCell / 2 + off;
            break;
          case Dir::West:
            x1 = px;
            x2 = px + 6;
            y1 = y2 = py + kCell / 2 + off;
            break;
        }
        svg << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
            << "\" y2=\"" << y2 << "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
      }
    }
    svg << "  <text x=\"" << px + kCell / 2 << "\" y=\"" << py + kCell / 2 + 4
        << "\" font-family=\"monospace\" font-size=\"12\" "
           "text-anchor=\"middle\">"
        << xml_escape(t.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

bool write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  return static_cast<bool>(out);
}

}  // namespace tilesim
