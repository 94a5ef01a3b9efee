#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilesim/core.hpp"
#include "tilesim/dynamics.hpp"

namespace tilesim {

// All documents are JSON with an explicit schema_version (currently 1) and a
// "kind" tag. Serializers emit two-space indentation, stable key order, and a
// trailing newline, so output is byte-deterministic and diff-friendly.

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Tileset documents
// ---------------------------------------------------------------------------

struct TilesetDoc {
  TAS tas;
  std::string name;         // optional metadata, empty = absent
  std::string description;  // optional metadata, empty = absent

  friend bool operator==(const TilesetDoc&, const TilesetDoc&) = default;
};

struct TilesetParse {
  std::optional<TilesetDoc> doc;  // absent on syntax/schema errors
  std::vector<Diagnostic> diagnostics;

  // True iff the document is structurally valid and validate_tas is clean.
  bool ok() const { return doc.has_value() && diagnostics.empty(); }
};

// Parses and validates. A structurally valid document always yields a TAS
// that has been passed through validate_tas; its findings are appended to
// `diagnostics`. Structural errors yield no TAS at all.
TilesetParse parse_tileset(const std::string& text);

std::string serialize_tileset(const TilesetDoc& doc);

// ---------------------------------------------------------------------------
// Shape documents
// ---------------------------------------------------------------------------

// Two encodings: {"points": [{x,y},...]} or {"grid": [rows...], "origin"?}.
// Grid rows are written top line first (decreasing y), with '#' in-shape,
// '.' out, and exactly one '@': an in-shape cell pinned to `origin`
// (default (0,0)) so absolute coordinates are unambiguous.
struct ShapeParse {
  std::optional<std::vector<Pos>> points;  // sorted, nonempty, duplicate-free
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return points.has_value() && diagnostics.empty(); }
};

ShapeParse parse_shape(const std::string& text);

// Points encoding of a finite point set.
std::string serialize_shape(std::vector<Pos> points);

// ---------------------------------------------------------------------------
// Assembly snapshots and traces
// ---------------------------------------------------------------------------

struct AssemblyParse {
  std::optional<Assembly> assembly;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return assembly.has_value() && diagnostics.empty(); }
};

AssemblyParse parse_assembly(const std::string& text, const TileSet& ts);
std::string serialize_assembly(const Assembly& a, const TileSet& ts);

struct TraceParse {
  std::optional<AssemblySequence> sequence;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return sequence.has_value() && diagnostics.empty(); }
};

TraceParse parse_trace(const std::string& text, const TileSet& ts);
std::string serialize_trace(const AssemblySequence& s, const TileSet& ts);

// Machine-readable dump of an enumeration; byte-identical for every worker
// count because node ids and edge order are.
std::string serialize_graph(const AssemblyGraph& g, const TileSet& ts);

// ---------------------------------------------------------------------------
// Renderers
// ---------------------------------------------------------------------------

// Character grid over the bounding box of the assembly extended to include
// the origin; rows in decreasing y, '.' for empty cells. Tiles show their
// display glyph, falling back to the first character of the name. With
// `color` set, glyphs are wrapped in ANSI 256-color codes from a fixed
// palette keyed by tile index.
std::string render_ascii(const Assembly& a, const TileSet& ts,
                         bool color = false);

// One 32px square per tile: display color (palette fallback), tile name
// centered, and per-side tick marks showing glue strength.
std::string render_svg(const Assembly& a, const TileSet& ts);

// ---------------------------------------------------------------------------
// Small file helpers shared by the CLI and tests
// ---------------------------------------------------------------------------

std::optional<std::string> read_file(const std::string& path);
bool write_file(const std::string& path, const std::string& bytes);

}  // namespace tilesim
