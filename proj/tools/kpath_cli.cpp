// kpath: command-line front end for the k-path coloring solver.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kpath/dp_solver.hpp"
#include "kpath/generator.hpp"
#include "kpath/instance_io.hpp"
#include "kpath/oracle.hpp"
#include "kpath/solver.hpp"
#include "kpath/stats.hpp"
#include "kpath/tree_decomposition.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace kpath;

namespace {

enum Exit : int {
  kOk = 0,
  kNegative = 1,
  kInputFailure = 2,
  kInternalFailure = 3,
  kFileFailure = 4,
  kGeneratorFailure = 5,
  kUsage = 64,
};

constexpr int kJsonSchema = 1;

std::string instance_name(const std::string& path) { return fs::path(path).stem().string(); }

std::string format_seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << s;
  return out.str();
}

json stats_json(const InstanceStats& s) {
  return {{"n", s.n},
          {"m", s.m},
          {"f", s.f_count},
          {"omega", s.omega},
          {"omega_exact", s.omega_exact},
          {"max_degree", s.max_degree},
          {"width", s.width},
          {"components", s.components},
          {"max_component_size", s.max_component_size}};
}

void print_stats(std::ostream& out, const std::string& prefix, const InstanceStats& s) {
  out << prefix << "vertices " << s.n << "\n"
      << prefix << "edges " << s.m << " (F: " << s.f_count << ")\n"
      << prefix << "omega " << s.omega << (s.omega_exact ? "" : " (greedy lower bound)") << "\n"
      << prefix << "max degree " << s.max_degree << "\n"
      << prefix << "width " << s.width << "\n"
      << prefix << "components " << s.components << " (largest " << s.max_component_size << ")\n";
}

void write_coloring_file(const std::string& path, const Coloring& c) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  write_coloring(out, c);
  if (!out) throw std::ios_base::failure("cannot write " + path);
}

Coloring read_coloring_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return parse_coloring(in, n);
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string instance;
  std::vector<int> ks;
  std::string strategy = "best_of_both";
  bool certificate = false;
  std::string certificate_out;
  bool no_split = false;
  bool json = false;
  int jobs = 1;
};

int cmd_solve(const SolveArgs& a) {
  const Instance inst = read_instance_file(a.instance);
  const std::vector<int> ks = a.ks.empty() ? std::vector<int>{inst.k} : a.ks;
  SolveOptions opts;
  opts.strategy = parse_strategy(a.strategy);
  opts.certificate = a.certificate || !a.certificate_out.empty();
  opts.split_bridges = !a.no_split;
  opts.jobs = a.jobs;
  const InstanceStats stats = compute_stats(inst.graph, opts.strategy);

  json report{{"schema", kJsonSchema},
              {"instance", instance_name(a.instance)},
              {"strategy", to_string(opts.strategy)},
              {"split_bridges", opts.split_bridges},
              {"stats", stats_json(stats)},
              {"results", json::array()}};
  std::ostringstream human;
  human << "c instance " << instance_name(a.instance) << "\n";
  print_stats(human, "c ", stats);

  bool all_verified = true;
  for (int k : ks) {
    const SolveResult r = chromatic_number(inst.graph, k, opts);
    json times{{"decompose", r.stats.decompose_seconds}, {"nicify", r.stats.nicify_seconds}};
    json decide_times = json::object();
    for (auto [colors, secs] : r.stats.decide_seconds) decide_times[std::to_string(colors)] = secs;
    times["decide"] = decide_times;
    times["total"] = r.stats.total_seconds;
    json entry{{"k", k},
               {"chromatic", r.chromatic},
               {"width", r.width},
               {"parts", r.stats.num_parts},
               {"max_part_size", r.stats.max_part_size},
               {"max_nice_nodes", r.stats.max_nice_nodes},
               {"total_states", r.stats.total_states},
               {"peak_table", r.stats.peak_table},
               {"seconds", times}};

    human << "c k " << k << ": chromatic " << r.chromatic << ", width " << r.width << ", parts "
          << r.stats.num_parts << ", states " << r.stats.total_states << " (peak "
          << r.stats.peak_table << ")\n";
    human << "c   time decompose " << format_seconds(r.stats.decompose_seconds) << " s, nicify "
          << format_seconds(r.stats.nicify_seconds) << " s";
    for (auto [colors, secs] : r.stats.decide_seconds) {
      human << ", decide L=" << colors << " " << format_seconds(secs) << " s";
    }
    human << ", total " << format_seconds(r.stats.total_seconds) << " s\n";

    if (opts.certificate) {
      const bool verified = verify_coloring(inst.graph, *r.coloring, k).valid;
      all_verified = all_verified && verified;
      entry["verified"] = verified;
      entry["coloring"] = r.coloring->color;
      human << "c   certificate " << (verified ? "verified" : "FAILED verification") << "\n";
      if (!a.certificate_out.empty()) {
        const std::string path =
            ks.size() == 1 ? a.certificate_out : a.certificate_out + ".k" + std::to_string(k);
        write_coloring_file(path, *r.coloring);
        human << "c   certificate written to " << path << "\n";
      } else if (!a.json) {
        if (ks.size() > 1) human << "c coloring for k " << k << "\n";
        write_coloring(human, *r.coloring);
      }
    }
    report["results"].push_back(entry);
  }

  if (a.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << human.str();
  }
  // A certificate that fails its own verification means a solver bug.
  return all_verified ? kOk : kInternalFailure;
}

// ---------------------------------------------------------------- decide

struct DecideArgs {
  std::string instance;
  std::optional<int> k;
  int colors = 0;
  std::string td;
  std::string strategy = "best_of_both";
  std::string certificate_out;
};

int cmd_decide(const DecideArgs& a) {
  const Instance inst = read_instance_file(a.instance);
  const int k = a.k.value_or(inst.k);
  TreeDecomposition td;
  if (!a.td.empty()) {
    std::ifstream in(a.td);
    if (!in) throw std::ios_base::failure("cannot open " + a.td);
    td = read_pace_td(in);
    if (TdReport rep = validate(inst.graph, td); !rep.valid) {
      throw InputError("decomposition does not fit the instance: " + rep.message);
    }
  } else {
    td = heuristic_decompose(inst.graph, parse_strategy(a.strategy));
  }
  const NiceTreeDecomposition ntd = make_nice(td);
  DpOptions opts;
  opts.record = !a.certificate_out.empty();
  const DecideResult r = decide(inst.graph, ntd, k, a.colors, opts);
  std::cout << (r.colorable ? "colorable" : "not colorable") << " (k " << k << ", colors "
            << a.colors << ", width " << width(td) << ", states " << r.stats.total_states << ", "
            << format_seconds(r.stats.seconds) << " s)\n";
  if (r.colorable && r.coloring) write_coloring_file(a.certificate_out, *r.coloring);
  return r.colorable ? kOk : kNegative;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string instance;
  std::string coloring;
  std::optional<int> k;
};

int cmd_verify(const VerifyArgs& a) {
  const Instance inst = read_instance_file(a.instance);
  const int k = a.k.value_or(inst.k);
  const Coloring c = read_coloring_file(a.coloring, inst.graph.num_vertices());
  const VerifyReport rep = verify_coloring(inst.graph, c, k);
  if (rep.valid) {
    std::cout << "valid: " << c.colors_used() << " colors, k " << k << "\n";
    return kOk;
  }
  std::cout << "invalid (k " << k << ")\n";
  for (std::size_t color = 0; color < rep.classes.size(); ++color) {
    const ColorClassVerdict& v = rep.classes[color];
    if (v.valid) continue;
    std::cout << "  color " << color << ": " << to_string(*v.violation) << " at";
    for (Vertex w : v.witness) std::cout << ' ' << w;
    std::cout << "\n";
  }
  return kNegative;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string kind = "geometric";
  GenParams params;
  int count = 1;
  std::string out;
  std::string out_dir;
  int f_percent = 95;
};

void emit_generated(const GenArgs& a, std::uint64_t seed, const std::string& path) {
  if (a.kind == "chain") {
    const Instance inst = chain_instance(a.params.target_vertices, seed, a.f_percent, a.params.k);
    if (path.empty()) {
      write_instance(std::cout, inst);
    } else {
      write_instance_file(path, inst);
    }
    return;
  }
  GenParams p = a.params;
  p.seed = seed;
  const GeneratedInstance g = generate(p);
  if (path.empty()) {
    write_instance(std::cout, g.instance);
    return;
  }
  write_instance_file(path, g.instance);
  std::ofstream layout(path + ".layout");
  if (!layout) throw std::ios_base::failure("cannot write " + path + ".layout");
  write_layout(layout, g.layout);
}

int cmd_gen(const GenArgs& a) {
  if (a.kind != "geometric" && a.kind != "chain") throw InputError("unknown kind '" + a.kind + "'");
  check_params(a.params);
  if (a.count == 1 && a.out_dir.empty()) {
    emit_generated(a, a.params.seed, a.out);
    return kOk;
  }
  if (a.out_dir.empty()) throw InputError("--count above 1 needs --out-dir");
  fs::create_directories(a.out_dir);
  for (int i = 0; i < a.count; ++i) {
    const std::uint64_t seed = a.params.seed + static_cast<std::uint64_t>(i);
    std::ostringstream name;
    name << a.kind << "_n" << a.params.target_vertices << "_s" << std::setw(4) << std::setfill('0')
         << seed << ".kpath";
    emit_generated(a, seed, (fs::path(a.out_dir) / name.str()).string());
  }
  return kOk;
}

// ---------------------------------------------------------------- stats

int cmd_stats(const std::string& path, const std::string& strategy, bool as_json) {
  const Instance inst = read_instance_file(path);
  const InstanceStats s = compute_stats(inst.graph, parse_strategy(strategy));
  if (as_json) {
    json j{{"schema", kJsonSchema}, {"instance", instance_name(path)}, {"k", inst.k}};
    j["stats"] = stats_json(s);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "instance " << instance_name(path) << "\n";
    print_stats(std::cout, "", s);
  }
  return kOk;
}

// ---------------------------------------------------------------- decompose

int cmd_decompose(const std::string& path, const std::string& strategy, const std::string& out) {
  const Instance inst = read_instance_file(path);
  const TreeDecomposition td = heuristic_decompose(inst.graph, parse_strategy(strategy));
  if (out.empty()) {
    write_pace_td(std::cout, td);
  } else {
    std::ofstream f(out);
    if (!f) throw std::ios_base::failure("cannot write " + out);
    write_pace_td(f, td);
  }
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite;
  std::vector<int> ks{1, 2};
  int repeat = 1;
  int jobs = 1;
  std::string strategy = "best_of_both";
  std::string out;
};

struct BenchRow {
  std::string name;
  InstanceStats stats;
  std::vector<int> chromatic;
  std::vector<double> seconds;
};

BenchRow bench_one(const fs::path& file, const BenchArgs& a, Strategy strategy) {
  const Instance inst = read_instance_file(file.string());
  BenchRow row{file.stem().string(), compute_stats(inst.graph, strategy), {}, {}};
  SolveOptions opts;
  opts.strategy = strategy;
  for (int k : a.ks) {
    double best = 0.0;
    int chi = 0;
    for (int rep = 0; rep < a.repeat; ++rep) {
      const SolveResult r = chromatic_number(inst.graph, k, opts);
      best = rep == 0 ? r.stats.total_seconds : std::min(best, r.stats.total_seconds);
      chi = r.chromatic;
    }
    row.chromatic.push_back(chi);
    row.seconds.push_back(best);
  }
  return row;
}

int cmd_bench(const BenchArgs& a) {
  if (a.repeat < 1) throw InputError("--repeat must be at least 1");
  const Strategy strategy = parse_strategy(a.strategy);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.suite)) {
    if (entry.is_regular_file() && entry.path().extension() == ".kpath") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows(files.size());
  std::vector<std::exception_ptr> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        rows[i] = bench_one(files[i], a, strategy);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(a.jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw std::ios_base::failure("cannot write " + a.out);
  }
  std::ostream& out = a.out.empty() ? std::cout : file;
  out << "instance,n,m,f,omega,delta,width";
  for (int k : a.ks) out << ",chi" << k << ",t" << k;
  out << "\n";
  for (const BenchRow& r : rows) {
    out << r.name << ',' << r.stats.n << ',' << r.stats.m << ',' << r.stats.f_count << ','
        << r.stats.omega << ',' << r.stats.max_degree << ',' << r.stats.width;
    for (std::size_t i = 0; i < a.ks.size(); ++i) {
      out << ',' << r.chromatic[i] << ',' << format_seconds(r.seconds[i]);
    }
    out << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-path coloring solver over tree decompositions"};
  app.require_subcommand(1);
  const std::string strategy_help = "min_degree, min_fill or best_of_both";

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "k-path chromatic number of an instance");
  s->add_option("instance", solve.instance, "instance file")->required();
  s->add_option("--k", solve.ks, "path length bound (repeatable; default from file)")
      ->delimiter(',');
  s->add_option("--strategy", solve.strategy, strategy_help);
  s->add_flag("--certificate", solve.certificate, "print and verify a coloring");
  s->add_option("--certificate-out", solve.certificate_out, "write the coloring here");
  s->add_flag("--no-split", solve.no_split, "do not cut along E\\F bridges");
  s->add_flag("--json", solve.json, "JSON report");
  s->add_option("--jobs", solve.jobs, "parts solved in parallel")->check(CLI::PositiveNumber);

  DecideArgs dec;
  auto* d = app.add_subcommand("decide", "is the instance k-path L-colorable");
  d->add_option("instance", dec.instance, "instance file")->required();
  d->add_option("--k", dec.k, "path length bound (default from file)");
  d->add_option("--colors,-L", dec.colors, "number of colors")->required()->check(CLI::NonNegativeNumber);
  d->add_option("--td", dec.td, "PACE .td decomposition to use");
  d->add_option("--strategy", dec.strategy, strategy_help);
  d->add_option("--certificate-out", dec.certificate_out, "write a coloring here if colorable");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "check a coloring file");
  v->add_option("instance", ver.instance, "instance file")->required();
  v->add_option("coloring", ver.coloring, "coloring file")->required();
  v->add_option("--k", ver.k, "path length bound (default from file)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate instances");
  g->add_option("--kind", gen.kind, "geometric or chain");
  g->add_option("--n", gen.params.target_vertices, "vertex count");
  g->add_option("--seed", gen.params.seed, "random seed (first seed with --count)");
  g->add_option("--dlith", gen.params.lithography_distance, "conflict distance");
  g->add_option("--ddsa", gen.params.dsa_min_distance, "smallest fusable distance");
  g->add_option("--pitch", gen.params.pitch, "minimum point spacing");
  g->add_option("--area", gen.params.area_per_vertex, "region area per vertex");
  g->add_option("--width", gen.params.region_width, "region width (0 = derive from --area)");
  g->add_option("--height", gen.params.region_height, "region height (0 = derive from --area)");
  g->add_option("--k", gen.params.k, "k stored in the file");
  g->add_option("--f-percent", gen.f_percent, "chain only: percent of fusable edges");
  g->add_option("--count", gen.count, "number of instances")->check(CLI::PositiveNumber);
  g->add_option("--out", gen.out, "output file (layout goes to <out>.layout)");
  g->add_option("--out-dir", gen.out_dir, "output directory for --count");

  std::string stats_path;
  std::string stats_strategy = "best_of_both";
  bool stats_json_flag = false;
  auto* st = app.add_subcommand("stats", "instance descriptors");
  st->add_option("instance", stats_path, "instance file")->required();
  st->add_option("--strategy", stats_strategy, strategy_help);
  st->add_flag("--json", stats_json_flag, "JSON output");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "solve every .kpath file in a directory, CSV out");
  b->add_option("suite", bench.suite, "suite directory")->required()->check(CLI::ExistingDirectory);
  b->add_option("--k", bench.ks, "k values (default 1,2)")->delimiter(',');
  b->add_option("--repeat", bench.repeat, "runs per instance; fastest is reported");
  b->add_option("--jobs", bench.jobs, "instances solved in parallel")->check(CLI::PositiveNumber);
  b->add_option("--strategy", bench.strategy, strategy_help);
  b->add_option("--out", bench.out, "CSV file (default stdout)");

  std::string dec_path, dec_strategy = "best_of_both", dec_out;
  auto* dc = app.add_subcommand("decompose", "heuristic tree decomposition in PACE format");
  dc->add_option("instance", dec_path, "instance file")->required();
  dc->add_option("--strategy", dec_strategy, strategy_help);
  dc->add_option("--out", dec_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*d) return cmd_decide(dec);
    if (*v) return cmd_verify(ver);
    if (*g) return cmd_gen(gen);
    if (*st) return cmd_stats(stats_path, stats_strategy, stats_json_flag);
    if (*b) return cmd_bench(bench);
    if (*dc) return cmd_decompose(dec_path, dec_strategy, dec_out);
  } catch (const ParseError& e) {
    std::cerr << "kpath: parse error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kInputFailure;
  } catch (const InputError& e) {
    std::cerr << "kpath: " << e.what() << "\n";
    return kInputFailure;
  } catch (const GenerationError& e) {
    std::cerr << "kpath: generator: " << e.what() << "\n";
    return kGeneratorFailure;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "kpath: " << e.what() << "\n";
    return kFileFailure;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "kpath: " << e.what() << "\n";
    return kFileFailure;
  } catch (const std::logic_error& e) {
    std::cerr << "kpath: internal error: " << e.what() << "\n";
    return kInternalFailure;
  }
  return kUsage;
}
