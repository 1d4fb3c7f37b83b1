#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "canram/coloring_io.hpp"
#include "canram/commands.hpp"

namespace {

using namespace canram;

struct Source {
  std::string input;
  std::string gen;
  int n = 0;
  Element N = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("-i,--input", input, "colouring file ('n N' header format)");
    cmd->add_option("-g,--gen", gen,
                    "generator: constant | projection:i | min | max | sum-mod:k "
                    "| injective | random:seed:colors | sidon-sum");
    cmd->add_option("-n,--arity", n, "subset size n (generators)");
    cmd->add_option("-N,--universe", N, "universe size N (generators)");
  }

  Coloring load() const {
    if (!input.empty() == !gen.empty()) {
      throw Error(Errc::kMalformedInput, "give exactly one of --input or --gen");
    }
    if (!input.empty()) return read_coloring_file(input);
    if (n < 1 || N < 1) {
      throw Error(Errc::kMalformedInput, "generators need -n and -N");
    }
    return make_coloring(parse_generator(gen), n, N);
  }
};

std::vector<Element> parse_elements(const std::string& text) {
  std::vector<Element> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Element>(v));
    } catch (const std::exception&) {
      throw Error(Errc::kMalformedInput, "bad element list '" + text + "'");
    }
  }
  return out;
}

PositionSet parse_positions(const std::string& text, int n) {
  std::vector<int> pos;
  for (Element e : parse_elements(text)) pos.push_back(static_cast<int>(e));
  return PositionSet(n, pos);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical Ramsey reduction engine"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit the JSON report");

  Source src;

  auto* atoms = app.add_subcommand("atoms", "atoms of the derived partition of [N]^{2n}");
  src.attach(atoms);

  std::size_t size = 0;
  std::size_t max_gap = 8;
  auto* verify = app.add_subcommand(
      "verify", "split homogeneous sets of each atom into I(Q)-canonical classes");
  src.attach(verify);
  verify->add_option("-s,--size", size, "homogeneous set size (>= 2n)")->required();
  verify->add_option("-G,--max-gap", max_gap, "largest gap to scan");

  std::string mode = "homogeneous";
  auto* find = app.add_subcommand("find", "complete search for homogeneous or canonical sets");
  src.attach(find);
  find->add_option("-m,--mode", mode, "homogeneous | canonical")
      ->check(CLI::IsMember({"homogeneous", "canonical"}));
  find->add_option("-s,--size", size, "set size")->required();

  std::optional<std::size_t> atom_index;
  std::string atom_of, start, schedule = "full";
  std::vector<std::string> pairs;
  auto* cascade = app.add_subcommand("cascade", "build and verify a cascade transcript");
  src.attach(cascade);
  cascade->add_option("-a,--atom", atom_index, "atom index from the atoms command");
  cascade->add_option("--atom-of", atom_of, "use the atom of this 2n-subset, e.g. 0,1,2,3");
  cascade->add_option("-x,--start", start, "start n-subset, e.g. 16,32")->required();
  cascade->add_option("--schedule", schedule, "full | pairs")
      ->check(CLI::IsMember({"full", "pairs"}));
  cascade->add_option("--pair", pairs, "schedule pair p/q, e.g. 0,1/2,3 (repeatable)");

  std::size_t cap = 8;
  std::string pool;
  auto* analyze = app.add_subcommand(
      "analyze-fn", "classify a function table as upward constant or selectively upward injective");
  src.attach(analyze);
  analyze->add_option("-c,--cap", cap, "largest set size to try");
  analyze->add_option("--pool", pool, "restrict the search to these elements");

  auto* selftest = app.add_subcommand("selftest", "oracle cross-checks at pinned sizes");

  auto* emit = app.add_subcommand("emit", "write a generated colouring in file format");
  src.attach(emit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  Report report;
  try {
    if (*emit) {
      write_coloring(std::cout, src.load());
      return kExitOk;
    }
    if (*atoms) {
      report = cmd_atoms(src.load());
    } else if (*verify) {
      report = cmd_verify(src.load(), size, max_gap);
    } else if (*find) {
      report = cmd_find(src.load(),
                        mode == "canonical" ? FindMode::kCanonical : FindMode::kHomogeneous,
                        size);
    } else if (*cascade) {
      const Coloring c = src.load();
      CascadeOptions options;
      options.atom_index = atom_index;
      if (!atom_of.empty()) options.atom_of = KSubset(parse_elements(atom_of));
      options.start = KSubset(parse_elements(start));
      options.full = schedule == "full";
      if (schedule == "pairs" && pairs.empty()) options.full = false;
      for (const auto& text : pairs) {
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
          throw Error(Errc::kMalformedInput, "pair must look like p/q: " + text);
        }
        options.pairs.emplace_back(parse_positions(text.substr(0, slash), c.arity()),
                                   parse_positions(text.substr(slash + 1), c.arity()));
      }
      report = cmd_cascade(c, options);
    } else if (*analyze) {
      const std::vector<Element> restrict_to =
          pool.empty() ? std::vector<Element>{} : KSubset(parse_elements(pool)).members();
      report = cmd_analyze_fn(src.load(), cap, restrict_to);
    } else if (*selftest) {
      report = cmd_selftest();
    }
  } catch (const Error& e) {
    report = input_error_report(std::string(errc_name(e.code())) + ": " + e.what());
  }

  (report.exit_code == kExitInputError ? std::cerr : std::cout) << report.render(json);
  return report.exit_code;
}
