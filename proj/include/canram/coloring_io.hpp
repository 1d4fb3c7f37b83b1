#pragma once

// Colouring ingestion: the line-oriented file format and the built-in
// generators.
//
// File format (space-separated decimal, newline-terminated):
//
//   n N
//   a_1 ... a_n c        one line per n-subset of {0..N-1}
//
// with strictly increasing a_i and a non-negative colour c. Every n-subset
// must appear exactly once; lines may come in any order. The writer emits
// subsets in lexicographic order.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "canram/coloring.hpp"

namespace canram {

/// name plus colon-separated parameters, e.g. "sum-mod:3", "random:7:4".
struct GeneratorSpec {
  std::string name;
  std::vector<std::uint64_t> params;

  std::string to_string() const;
};

GeneratorSpec parse_generator(std::string_view text);

/// constant | projection:i | min | max | sum-mod:k | injective |
/// random:seed:colors | sidon-sum
Coloring make_coloring(const GeneratorSpec& spec, int n, Element universe);

const std::vector<std::string>& generator_names();

/// One instance of every generator family at arity n, with fixed
/// parameters and seeds.
std::vector<GeneratorSpec> standard_generators(int n);

Coloring read_coloring(std::istream& in, const std::string& source = "<stream>");
Coloring read_coloring_file(const std::filesystem::path& path);
void write_coloring(std::ostream& out, const Coloring& c);

}  // namespace canram
