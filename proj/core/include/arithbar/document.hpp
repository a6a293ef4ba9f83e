#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arithbar/consensus.hpp"
#include "arithbar/dvr.hpp"
#include "arithbar/matrix.hpp"
#include "arithbar/sheaf.hpp"

namespace arithbar {

/// Command-line replacements for the ring block of a document.
struct RingOverride {
  std::optional<std::uint64_t> prime;
  std::optional<int> precision;
};

/// A sheaf description file: ring, vertices, edges, restrictions and an
/// optional block of clock-rate ratios (one per edge, in edge order).
struct SheafDocument {
  NetworkSheaf sheaf;
  std::optional<std::vector<Ratio>> clock_ratios;
  /// False when the file lists no restrictions (e.g. a pure clock network).
  bool has_restrictions = true;

  bool operator==(const SheafDocument& o) const;
};

/// Throws ParseError (malformed text, wrong field types) or ValidationError
/// (unknown ids, shape mismatches, invalid ring parameters).
SheafDocument parse_sheaf_text(std::string_view text, const RingOverride& ring = {});
SheafDocument parse_sheaf_file(const std::filesystem::path& path, const RingOverride& ring = {});
/// Entries are written as canonical representatives, so parsing the output
/// reproduces the document.
std::string serialize_sheaf(const SheafDocument& doc);

/// A bare matrix file: {"ring": {...}, "matrix": [[...]]}.
DvrMatrix parse_matrix_text(std::string_view text, const RingOverride& ring = {});

/// Reads either a matrix file or a sheaf file; for the latter, the
/// coboundary (of the clock sheaf when only clock ratios are given).
DvrMatrix load_coboundary_text(std::string_view text, const RingOverride& ring = {});

/// The sheaf to analyze: the listed restrictions, or the gauged clock sheaf
/// when the document only carries clock ratios.
NetworkSheaf effective_sheaf(const SheafDocument& doc);

ClockNetwork clock_network(const SheafDocument& doc);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace arithbar
