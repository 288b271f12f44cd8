// arborist: K-best maximum spanning arborescence decoding, with and without
// the single-root-child constraint of dependency trees.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arborist/io.hpp"
#include "arborist/kbest.hpp"
#include "arborist/mst.hpp"
#include "arborist/oracle.hpp"

namespace {

using namespace arborist;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitNoTree = 2;
constexpr int kExitDiverged = 3;

struct CommonOpts {
  std::string input;
  std::string format = "auto";
  std::string output;
  std::int64_t k = 1;
  bool dep = false;
  std::int32_t n = 0;
  std::uint64_t seed = 1;
};

Graph load_graph(const CommonOpts& opt) {
  if (!opt.input.empty()) return io::read_graph_file(opt.input, io::format_from_name(opt.format));
  if (opt.n > 0) {
    io::log_line(1, "generating dense graph: n=" + std::to_string(opt.n) +
                        " seed=" + std::to_string(opt.seed));
    return io::random_dense_graph(opt.n, opt.seed);
  }
  throw_error(Errc::parse_error, "no input: pass --input FILE or --n N [--seed S]");
}

std::ostream& open_output(const CommonOpts& opt, std::ofstream& file) {
  if (opt.output.empty()) return std::cout;
  file.open(opt.output, std::ios::binary);
  if (!file) throw_error(Errc::parse_error, "cannot open output file " + opt.output);
  return file;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int run_kbest(const CommonOpts& opt) {
  Graph g = load_graph(opt);
  std::ofstream file;
  std::ostream& out = open_output(opt, file);
  const auto t0 = std::chrono::steady_clock::now();
  KBestStream stream(g, opt.dep);
  std::int64_t k = 0;
  while (k < opt.k) {
    auto tree = stream.next_tree();
    if (!tree) break;
    out << io::tree_record(++k, *tree, g.node_count());
  }
  io::log_line(1, "decoded " + std::to_string(k) + " trees in " +
                      io::format_weight(ms_since(t0)) + " ms");
  return kExitOk;
}

int run_check(const CommonOpts& opt) {
  Graph g = load_graph(opt);
  std::vector<oracle::EnumeratedTree> reference = oracle::enumerate_all(g, opt.dep);
  std::vector<Arborescence> decoded;
  try {
    KBestStream stream(g, opt.dep);
    while (auto tree = stream.next_tree()) {
      if (opt.dep ? !is_dependency_tree(g, *tree) : !is_valid_tree(g, *tree)) {
        std::cout << "FAIL: decoded tree " << decoded.size() + 1 << " is not valid\n";
        return kExitDiverged;
      }
      decoded.push_back(std::move(*tree));
      if (decoded.size() > reference.size()) break;  // comparator reports the overshoot
    }
  } catch (const Error& e) {
    if (e.code() != Errc::no_tree) throw;  // treeless graph: compare the empty enumeration
  }
  if (auto diff = oracle::compare_enumerations(decoded, reference)) {
    std::cout << "FAIL: " << *diff << "\n";
    return kExitDiverged;
  }
  std::cout << "PASS: " << decoded.size() << " trees match the oracle (dep="
            << (opt.dep ? "true" : "false") << ")\n";
  return kExitOk;
}

int run_stats(const CommonOpts& opt) {
  Graph g = load_graph(opt);
  KBestStream stream(g, false);
  std::int64_t total = 0, violations = 0;
  while (total < opt.k) {
    auto tree = stream.next_tree();
    if (!tree) break;
    ++total;
    if (tree->root_child_count() != 1) ++violations;
  }
  std::cout << "violations: " << violations << "\n";
  std::cout << "total: " << total << "\n";
  std::cout << "rate: " << violations << "/" << total;
  if (total > 0)
    std::cout << " (" << io::format_weight(static_cast<double>(violations) /
                                           static_cast<double>(total))
              << ")";
  std::cout << "\n";
  return kExitOk;
}

int run_bench(const CommonOpts& opt) {
  Graph g = load_graph(opt);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Arborescence> integrated = kbest(g, opt.k);
  const double ms_integrated = ms_since(t0);

  const auto t1 = std::chrono::steady_clock::now();
  std::vector<Arborescence> baseline;
  {
    KBestStream stream(g, false, [](const Graph& sub) { return oracle::naive_next(sub); });
    for (std::int64_t i = 0; i < opt.k; ++i) {
      auto tree = stream.next_tree();
      if (!tree) break;
      baseline.push_back(std::move(*tree));
    }
  }
  const double ms_baseline = ms_since(t1);

  if (integrated.size() != baseline.size()) {
    std::cout << "DIVERGED: integrated yields " << integrated.size() << " trees, baseline "
              << baseline.size() << "\n";
    return kExitDiverged;
  }
  for (std::size_t i = 0; i < integrated.size(); ++i) {
    if (integrated[i].weight != baseline[i].weight) {
      std::cout << "DIVERGED: at k=" << i + 1 << " integrated weight "
                << io::format_weight(integrated[i].weight) << " vs baseline "
                << io::format_weight(baseline[i].weight) << "\n";
      return kExitDiverged;
    }
  }
  std::cout << "sequences: identical (" << integrated.size() << " trees)\n";
  std::cout << "integrated next: " << io::format_weight(ms_integrated) << " ms\n";
  std::cout << "opt+naive_next baseline: " << io::format_weight(ms_baseline) << " ms\n";
  if (ms_integrated > 0.0)
    std::cout << "speedup: " << io::format_weight(ms_baseline / ms_integrated) << "x\n";
  return kExitOk;
}

int run_gen(const CommonOpts& opt) {
  if (opt.n < 1) throw_error(Errc::parse_error, "gen requires --n >= 1");
  Graph g = io::random_dense_graph(opt.n, opt.seed);
  std::ofstream file;
  std::ostream& out = open_output(opt, file);
  const io::Format f = io::format_from_name(opt.format);
  out << (f == io::Format::tsv ? io::graph_to_tsv(g) : io::graph_to_json(g));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-best maximum spanning arborescences and dependency trees"};
  app.require_subcommand(1);

  CommonOpts opt;
  auto add_io = [&](CLI::App* cmd, bool with_gen) {
    cmd->add_option("--input", opt.input, "graph file (json or tsv)");
    cmd->add_option("--format", opt.format, "json|tsv (default: by file extension)");
    cmd->add_option("--output", opt.output, "output path (default stdout)");
    if (with_gen) {
      cmd->add_option("--n", opt.n, "generate a dense graph with N non-root nodes");
      cmd->add_option("--seed", opt.seed, "generator seed");
    }
  };

  CLI::App* c_kbest = app.add_subcommand("kbest", "decode the K best trees");
  add_io(c_kbest, true);
  c_kbest->add_option("--k", opt.k, "number of trees")->required()->check(CLI::PositiveNumber);
  c_kbest->add_flag("--dep", opt.dep, "enforce exactly one root child");

  CLI::App* c_check = app.add_subcommand("check", "differential test against the brute-force oracle");
  add_io(c_check, true);
  c_check->add_flag("--dep", opt.dep, "check the dependency-tree enumeration");

  CLI::App* c_stats = app.add_subcommand("stats", "root-constraint violation rate of K-best output");
  add_io(c_stats, true);
  c_stats->add_option("--k", opt.k, "number of trees")->required()->check(CLI::PositiveNumber);

  CLI::App* c_bench = app.add_subcommand("bench", "integrated decoder vs naive baseline");
  add_io(c_bench, true);
  c_bench->add_option("--k", opt.k, "number of trees")->required()->check(CLI::PositiveNumber);

  CLI::App* c_gen = app.add_subcommand("gen", "emit a seeded random dense graph");
  add_io(c_gen, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (app.got_subcommand(c_kbest)) return run_kbest(opt);
    if (app.got_subcommand(c_check)) return run_check(opt);
    if (app.got_subcommand(c_stats)) return run_stats(opt);
    if (app.got_subcommand(c_bench)) return run_bench(opt);
    if (app.got_subcommand(c_gen)) return run_gen(opt);
  } catch (const arborist::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == arborist::Errc::no_tree ? kExitNoTree : kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
