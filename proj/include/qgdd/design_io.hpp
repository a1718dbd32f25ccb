#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgdd/gdd.hpp"

namespace qgdd {

using RowList = std::vector<std::vector<Word>>;

/// On-disk form of one design. Subspaces are lists of row integers
/// (canonical basis, little-endian base q). Over GF(q^g) the row integers of a
/// vector and of its flattening coincide, so `flattened` only records intent.
struct DesignFile {
  static constexpr int kSchemaVersion = 1;

  int schema_version = kSchemaVersion;
  GddParams params;
  bool flattened = true;
  RowList spread;
  RowList blocks;
  struct Group {
    RowList generators;  // v x v matrices, one row integer per row
    std::uint64_t order = 0;
  };
  std::optional<Group> group;
  std::optional<RowList> orbit_generators;
};

/// Canonical text: fixed key order, spread and blocks sorted, one subspace per line.
std::string write_design(const DesignFile& file);
/// Throws DecodeError on malformed input.
DesignFile parse_design(std::string_view text);

DesignFile from_instance(const GddInstance& instance);
/// Canonicalises every subspace and rebuilds the spread. Throws DecodeError
/// or NotAPartition.
GddInstance to_instance(const DesignFile& file);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace qgdd
