#pragma once

#include <filesystem>
#include <iosfwd>

#include "glasso/dictionary.hpp"

namespace glasso {

/// BDX1 layout (little-endian):
///   "BDX1", u32 n, u32 p, u32 G, G x u32 group sizes, n*p f64 row-major,
///   u32 descriptor length, descriptor bytes (UTF-8),
///   p x u32 column indices listed group by group.
/// The trailing index section carries non-contiguous partitions. Structured
/// descriptors are rebuilt on read and checked against the stored entries.
void write_bdx(std::ostream& out, const BlockDictionary& x);
BlockDictionary read_bdx(std::istream& in);

void save_bdx(const std::filesystem::path& path, const BlockDictionary& x);
BlockDictionary load_bdx(const std::filesystem::path& path);

/// Structure tree for a descriptor without dense leaves; nullptr otherwise.
StructurePtr parse_descriptor(const std::string& descriptor);

}  // namespace glasso
