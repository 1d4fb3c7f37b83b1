#include "canram/coloring_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace canram {

namespace {

Error malformed(const std::string& source, std::size_t line, const std::string& what) {
  return Error(Errc::kMalformedInput,
               source + ":" + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(std::string_view token, const std::string& what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw Error(Errc::kMalformedInput,
                "bad " + what + " '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(sep, start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

void expect_params(const GeneratorSpec& spec, std::size_t count) {
  if (spec.params.size() != count) {
    throw Error(Errc::kMalformedInput,
                "generator '" + spec.name + "' takes " + std::to_string(count) +
                    " parameter(s)");
  }
}

}  // namespace

std::string GeneratorSpec::to_string() const {
  std::string out = name;
  for (auto p : params) out += ":" + std::to_string(p);
  return out;
}

GeneratorSpec parse_generator(std::string_view text) {
  auto parts = split(text, ':');
  GeneratorSpec spec{std::string(parts.front()), {}};
  for (std::size_t i = 1; i < parts.size(); ++i) {
    spec.params.push_back(parse_u64(parts[i], "generator parameter"));
  }
  const auto& names = generator_names();
  if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
    throw Error(Errc::kMalformedInput, "unknown generator '" + spec.name + "'");
  }
  return spec;
}

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {
      "constant", "projection", "min",    "max",
      "sum-mod",  "injective",  "random", "sidon-sum"};
  return names;
}

Coloring make_coloring(const GeneratorSpec& spec, int n, Element universe) {
  const std::string desc = spec.to_string();
  const std::string& g = spec.name;
  using Span = std::span<const Element>;
  if (g == "constant") {
    expect_params(spec, 0);
    return Coloring::from_rule(n, universe, [](Span) { return ColorId{0}; }, desc);
  }
  if (g == "projection") {
    expect_params(spec, 1);
    const std::uint64_t i = spec.params[0];
    if (i >= static_cast<std::uint64_t>(n)) {
      throw Error(Errc::kMalformedInput, "projection index must be < n");
    }
    return Coloring::from_rule(n, universe, [i](Span s) { return ColorId{s[i]}; }, desc);
  }
  if (g == "min") {
    expect_params(spec, 0);
    return Coloring::from_rule(n, universe, [](Span s) { return ColorId{s.front()}; }, desc);
  }
  if (g == "max") {
    expect_params(spec, 0);
    return Coloring::from_rule(n, universe, [](Span s) { return ColorId{s.back()}; }, desc);
  }
  if (g == "sum-mod") {
    expect_params(spec, 1);
    const std::uint64_t k = spec.params[0];
    if (k == 0) throw Error(Errc::kMalformedInput, "sum-mod modulus must be >= 1");
    return Coloring::from_rule(
        n, universe,
        [k](Span s) {
          ColorId sum = 0;
          for (Element e : s) sum += e;
          return sum % k;
        },
        desc);
  }
  if (g == "injective") {
    expect_params(spec, 0);
    return Coloring::from_rule(n, universe, [](Span s) { return colex_rank(s); }, desc);
  }
  if (g == "sidon-sum") {
    // Plain sum; injective on pairs drawn from a Sidon set.
    expect_params(spec, 0);
    return Coloring::from_rule(
        n, universe,
        [](Span s) {
          ColorId sum = 0;
          for (Element e : s) sum += e;
          return sum;
        },
        desc);
  }
  if (g == "random") {
    expect_params(spec, 2);
    const std::uint64_t colors = spec.params[1];
    if (colors == 0) throw Error(Errc::kMalformedInput, "random needs >= 1 colour");
    std::mt19937_64 rng(spec.params[0]);
    std::vector<ColorId> table;
    table.reserve(binomial(universe, n));
    for_each_ksubset(universe, n, [&](Span) { table.push_back(rng() % colors); });
    return Coloring::from_lex_table(n, universe, table, desc);
  }
  throw Error(Errc::kMalformedInput, "unknown generator '" + g + "'");
}

std::vector<GeneratorSpec> standard_generators(int n) {
  std::vector<GeneratorSpec> out;
  out.push_back({"constant", {}});
  for (int i = 0; i < n; ++i) out.push_back({"projection", {std::uint64_t(i)}});
  out.push_back({"min", {}});
  out.push_back({"max", {}});
  out.push_back({"sum-mod", {2}});
  out.push_back({"sum-mod", {3}});
  out.push_back({"injective", {}});
  out.push_back({"sidon-sum", {}});
  out.push_back({"random", {1, 2}});
  out.push_back({"random", {2, 3}});
  out.push_back({"random", {3, 5}});
  return out;
}

Coloring read_coloring(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string_view> head;
  while (std::getline(in, line)) {
    ++lineno;
    head = tokens(line);
    if (!head.empty()) break;
  }
  if (head.empty()) throw malformed(source, lineno, "missing header 'n N'");
  if (head.size() != 2) throw malformed(source, lineno, "header must be 'n N'");
  std::uint64_t n = 0, N = 0;
  try {
    n = parse_u64(head[0], "arity");
    N = parse_u64(head[1], "universe size");
  } catch (const Error& e) {
    throw malformed(source, lineno, e.what());
  }
  if (n < 1 || n > 16) throw malformed(source, lineno, "arity must be in 1..16");
  if (N < n) throw malformed(source, lineno, "universe smaller than arity");
  if (N > 0xffffffffULL) throw malformed(source, lineno, "universe too large");
  const std::uint64_t count = binomial(N, n);
  if (count > 200'000'000ULL) throw malformed(source, lineno, "too many subsets to tabulate");

  std::vector<ColorId> colex(count);
  std::vector<bool> seen(count, false);
  std::uint64_t filled = 0;
  std::vector<Element> subset(n);
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != n + 1) {
      throw malformed(source, lineno, "expected " + std::to_string(n) +
                                          " elements and a colour");
    }
    try {
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t a = parse_u64(tok[i], "element");
        if (a >= N) throw Error(Errc::kMalformedInput, "element " + std::to_string(a) + " >= N");
        if (i > 0 && a <= subset[i - 1]) {
          throw Error(Errc::kMalformedInput, "elements must be strictly increasing");
        }
        subset[i] = static_cast<Element>(a);
      }
      const std::uint64_t r = colex_rank(subset);
      if (seen[r]) throw Error(Errc::kMalformedInput, "duplicate subset");
      seen[r] = true;
      colex[r] = parse_u64(tok[n], "colour");
      ++filled;
    } catch (const Error& e) {
      throw malformed(source, lineno, e.what());
    }
  }
  if (filled != count) {
    throw malformed(source, lineno,
                    "covers " + std::to_string(filled) + " of " +
                        std::to_string(count) + " subsets");
  }
  return Coloring::from_colex_table(static_cast<int>(n), static_cast<Element>(N),
                                    std::move(colex), "file:" + source);
}

Coloring read_coloring_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kMalformedInput, "cannot open " + path.string());
  return read_coloring(in, path.filename().string());
}

void write_coloring(std::ostream& out, const Coloring& c) {
  out << c.arity() << ' ' << c.universe() << '\n';
  for_each_ksubset(c.universe(), c.arity(), [&](std::span<const Element> s) {
    for (Element e : s) out << e << ' ';
    out << c.color(s) << '\n';
  });
}

}  // namespace canram
