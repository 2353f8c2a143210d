#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "seqbin/bench.hpp"
#include "seqbin/io.hpp"
#include "seqbin/seqbin.hpp"

using namespace seqbin;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

std::string join(const std::vector<int>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

// change:OP | smooth:CST | incnvalue, applied to the file's domains and N
Instance apply_constraint(const Instance& base, const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "change") {
    const auto op = relation_kind_from_name(arg);
    if (!op) throw InputError("--constraint change: unknown relation '" + arg + "'");
    try {
      return make_change(base.n, base.d, base.domains, base.n_domain, *op);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--constraint: ") + e.what());
    }
  }
  if (name == "smooth") {
    int cst = 0;
    try {
      std::size_t used = 0;
      cst = std::stoi(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw InputError("--constraint smooth: expected an integer, got '" + arg + "'");
    }
    if (cst < 0) throw InputError("--constraint smooth: cst must be >= 0");
    return make_smooth(base.n, base.d, base.domains, base.n_domain, cst);
  }
  if (name == "incnvalue" && arg.empty()) return make_increasing_nvalue(base.n, base.d, base.domains, base.n_domain);
  throw InputError("--constraint: expected change:OP, smooth:CST or incnvalue, got '" + spec + "'");
}

Instance load(const std::string& path, const std::string& constraint) {
  Instance inst = load_instance(path);
  if (!constraint.empty()) inst = apply_constraint(inst, constraint);
  return inst;
}

void print_result(const PropagationResult& r, bool json) {
  if (json) {
    std::cout << result_to_json(r).dump() << "\n";
    return;
  }
  std::cout << "status: " << to_string(r.status) << "\n";
  std::cout << "engine: " << to_string(r.mode) << "\n";
  std::cout << "iterations: " << r.iterations << "\n";
  if (r.fallback_count) std::cout << "fallbacks: " << r.fallback_count << "\n";
  if (r.failed()) {
    if (r.failed_var >= 0) {
      std::cout << "failed at: X" << r.failed_var << "\n";
    } else {
      std::cout << "failed at: N\n";
    }
  }
  std::cout << "N: " << join(r.n_domain) << "\n";
  for (std::size_t i = 0; i < r.domains.size(); ++i) std::cout << "X" << i << ": " << join(r.domains[i]) << "\n";
  std::cout << "removed:";
  if (r.removed.empty()) std::cout << " none";
  for (auto [i, v] : r.removed) std::cout << " (" << i << "," << v << ")";
  std::cout << "\n";
}

void print_structure(const StructureReport& s) {
  std::cout << "n1: " << s.n1 << "\nn2: " << s.n2 << "\nmixed width: " << s.mixed_width() << "\n";
  for (std::size_t i = 0; i < s.kinds.size(); ++i) {
    std::cout << "layer " << i + 1 << " " << to_string(s.kinds[i]) << ":";
    for (const auto& c : s.distinct_forward[i]) std::cout << " " << to_string(c);
    std::cout << "\n";
  }
  std::cout << "violations: " << s.violations.size() << "\n";
  for (const auto& v : s.violations) {
    std::cout << "  " << v.rule << " layer " << v.layer << (v.backward ? " backward" : " forward") << ": " << v.detail
              << "\n";
  }
}

// First difference between two results, or "" when they agree.
std::string divergence(const PropagationResult& got, const PropagationResult& want) {
  if (got.status != want.status) return "status " + to_string(got.status) + " vs " + to_string(want.status);
  if (want.failed()) return "";
  if (got.n_domain != want.n_domain) return "N " + join(got.n_domain) + " vs " + join(want.n_domain);
  for (std::size_t i = 0; i < want.domains.size(); ++i) {
    if (got.domains[i] != want.domains[i]) {
      return "X" + std::to_string(i) + " " + join(got.domains[i]) + " vs " + join(want.domains[i]);
    }
  }
  return "";
}

std::vector<Engine> check_engines(const Instance& inst) {
  std::vector<Engine> out{Engine::Structured};
  if (select_engine(inst) == Engine::Convex) out.push_back(Engine::Convex);
  out.push_back(Engine::PathDP);
  out.push_back(Engine::Auto);
  return out;
}

// Engines vs the brute-force oracle. Returns false on the first divergence.
bool check_one(const Instance& inst, const std::string& label) {
  const PropagationResult want = brute_force_dc(inst);
  PropagateOptions opt;
  opt.strict = false;
  for (Engine e : check_engines(inst)) {
    const PropagationResult got = propagate(inst, e, opt);
    const std::string diff = divergence(got, want);
    if (!diff.empty()) {
      std::cout << label << ": " << to_string(e) << " differs from brute force: " << diff << "\n";
      std::cout << serialize_instance(inst);
      return false;
    }
  }
  return true;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SEQBIN propagation, oracle checks and benchmarks"};
  app.require_subcommand(1);

  std::string file, constraint, engine_name = "auto", out_path;
  bool json = false, structure = false, strict = false, costs = false;

  auto* prop = app.add_subcommand("propagate", "propagate an instance file");
  prop->add_option("file", file, "instance JSON")->required();
  prop->add_option("--engine", engine_name, "auto|structured|convex|pathdp|legacy");
  prop->add_option("--constraint", constraint, "change:OP | smooth:CST | incnvalue");
  prop->add_flag("--json", json, "print the result as JSON");
  prop->add_flag("--structure", structure, "print the cost-set structure report");
  prop->add_flag("--strict", strict, "fail instead of falling back to explicit sets");

  std::vector<int> random_args;
  auto* check = app.add_subcommand("check", "compare engines against the brute-force oracle");
  check->add_option("file", file, "instance JSON");
  check->add_option("--constraint", constraint, "change:OP | smooth:CST | incnvalue");
  check->add_option("--random", random_args, "N D COUNT SEED: random monotone instances up to size N, values 0..D")
      ->expected(4);

  auto* classify_cmd = app.add_subcommand("classify", "relation properties of an instance");
  classify_cmd->add_option("file", file, "instance JSON")->required();
  classify_cmd->add_option("--constraint", constraint, "change:OP | smooth:CST | incnvalue");

  auto* structure_cmd = app.add_subcommand("structure", "layer kinds and structural checks of the cost sets");
  structure_cmd->add_option("file", file, "instance JSON")->required();
  structure_cmd->add_option("--constraint", constraint, "change:OP | smooth:CST | incnvalue");

  auto* dot = app.add_subcommand("export-dot", "layered graph as graphviz DOT");
  dot->add_option("file", file, "instance JSON")->required();
  dot->add_option("--constraint", constraint, "change:OP | smooth:CST | incnvalue");
  dot->add_flag("--costs", costs, "label vertices with forward cost sets");
  dot->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* expand = app.add_subcommand("expand", "print the instance JSON, after --constraint");
  expand->add_option("file", file, "instance JSON")->required();
  expand->add_option("--constraint", constraint, "change:OP | smooth:CST | incnvalue");
  expand->add_option("-o,--output", out_path, "output file (default stdout)");

  std::string gen_family;
  std::vector<int> gen_args;
  unsigned gen_seed = 1;
  auto* generate = app.add_subcommand("generate", "write a generated instance");
  generate->add_option("family", gen_family, "slow-bounds P | change|smooth|incnvalue|random-monotone N D")->required();
  generate->add_option("args", gen_args, "family parameters")->required();
  generate->add_option("--seed", gen_seed, "seed for random families");
  generate->add_option("-o,--output", out_path, "output file (default stdout)");

  std::string bench_family = "change", bench_n = "128", bench_d = "16", bench_engines = "structured,convex", scope = "propagate";
  int reps = 5;
  bool cpu = false, fastest = false, csv = true;
  auto* bench = app.add_subcommand("bench", "timings per engine, n and d as CSV");
  bench->add_option("--family", bench_family, "change|smooth|incnvalue|random-monotone");
  bench->add_option("--n", bench_n, "comma separated sizes");
  bench->add_option("--d", bench_d, "comma separated value_max");
  bench->add_option("--engine", bench_engines, "comma separated engines");
  bench->add_option("--reps", reps, "runs per point (median)");
  bench->add_option("--scope", scope, "propagate|cost-sets");
  bench->add_flag("--cpu", cpu, "thread CPU time instead of wall time");
  bench->add_flag("--fastest", fastest, "fastest call per run instead of the mean");
  bench->add_flag("--csv", csv, "CSV output (the default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prop) {
      const auto engine = engine_from_name(engine_name);
      if (!engine) throw InputError("--engine: unknown engine '" + engine_name + "'");
      const Instance inst = load(file, constraint);
      PropagateOptions opt;
      opt.report_structure = structure;
      if (strict) opt.strict = true;
      const PropagationResult r = propagate(inst, *engine, opt);
      print_result(r, json);
      if (structure && r.structure && !json) print_structure(*r.structure);
      return r.failed() ? kExitFailed : kExitOk;
    }

    if (*check) {
      if (random_args.empty() == file.empty()) throw InputError("check needs either FILE or --random N D COUNT SEED");
      if (!file.empty()) {
        const Instance inst = load(file, constraint);
        if (!check_one(inst, file)) return kExitFailed;
        std::cout << file << ": all engines agree with brute force\n";
        return kExitOk;
      }
      const int max_n = random_args[0], max_d = random_args[1], count = random_args[2];
      if (max_n < 1 || max_d < 0 || count < 0) throw InputError("--random: need N >= 1, D >= 0, COUNT >= 0");
      std::mt19937 rng(static_cast<unsigned>(random_args[3]));
      for (int it = 0; it < count; ++it) {
        const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
        const Value d = static_cast<Value>(rng() % static_cast<unsigned>(max_d + 1));
        Instance inst = random_monotone_instance(rng, n, d, it % 3 == 0);
        if (!constraint.empty()) inst = apply_constraint(inst, constraint);
        if (!check_one(inst, "instance " + std::to_string(it))) return kExitFailed;
      }
      std::cout << count << " random instances: all engines agree with brute force\n";
      return kExitOk;
    }

    if (*classify_cmd) {
      const Instance inst = load(file, constraint);
      auto yn = [](bool b) { return b ? "yes" : "no"; };
      auto describe = [&](const char* name, const std::vector<BinaryRelation>& list) {
        for (std::size_t k = 0; k < list.size(); ++k) {
          const BinaryRelation& r = list[k];
          std::cout << name;
          if (list.size() > 1) std::cout << "[" << k << "]";
          std::cout << " " << to_string(r.kind()) << ": monotone " << yn(is_monotone(r, inst.pi)) << ", row convex "
                    << yn(is_row_convex(r, inst.pi)) << ", column convex " << yn(is_col_convex(r, inst.pi)) << "\n";
        }
      };
      describe("B", inst.b_list);
      describe("C", inst.c_list);
      std::cout << "convex engine applicable: " << yn(convex_applicable(inst)) << "\n";
      std::cout << "auto engine: " << to_string(select_engine(inst)) << "\n";
      try {
        std::cout << "counting continuous: " << yn(is_counting_continuous(inst)) << "\n";
      } catch (const GuardExceeded&) {
        std::cout << "counting continuous: unknown (instance too large for the oracle)\n";
      }
      return kExitOk;
    }

    if (*structure_cmd) {
      const Instance inst = load(file, constraint);
      auto coherent = phase1_b_coherence(inst);
      if (!coherent) {
        std::cout << "no B-coherent assignment\n";
        return kExitFailed;
      }
      long fallbacks = 0;
      SweepOptions sweep;
      sweep.strict = false;
      const StructuredCostTable ct = phase2_structured(*coherent, sweep, fallbacks);
      print_structure(analyze_structure(*coherent, ct));
      std::cout << "fallbacks: " << fallbacks << "\n";
      const auto gaps = probe_bound_gaps(*coherent, ct);
      std::cout << "bound probes failing: " << gaps.size() << "\n";
      for (const auto& g : gaps) std::cout << "  " << g << "\n";
      return kExitOk;
    }

    if (*dot) {
      const Instance inst = load(file, constraint);
      const LayeredGraph g = build_graph(inst);
      if (costs) {
        const ExplicitCostTable ct = pathdp(g);
        write_text(export_dot(g, &ct), out_path);
      } else {
        write_text(export_dot(g), out_path);
      }
      return kExitOk;
    }

    if (*expand) {
      write_text(serialize_instance(load(file, constraint)), out_path);
      return kExitOk;
    }

    if (*generate) {
      Instance inst;
      if (gen_family == "slow-bounds") {
        if (gen_args.size() != 1) throw InputError("generate slow-bounds needs P");
        inst = slow_bounds_chain(gen_args[0]);
      } else {
        const auto family = bench_family_from_name(gen_family);
        if (!family) throw InputError("generate: unknown family '" + gen_family + "'");
        if (gen_args.size() != 2 || gen_args[0] < 1 || gen_args[1] < 0) throw InputError("generate needs N >= 1 and D >= 0");
        inst = bench_instance(*family, gen_args[0], gen_args[1], gen_seed);
      }
      write_text(serialize_instance(inst), out_path);
      return kExitOk;
    }

    if (*bench) {
      const auto family = bench_family_from_name(bench_family);
      if (!family) throw InputError("--family: unknown family '" + bench_family + "'");
      BenchScope bscope;
      if (scope == "propagate") {
        bscope = BenchScope::Propagate;
      } else if (scope == "cost-sets") {
        bscope = BenchScope::CostSets;
      } else {
        throw InputError("--scope: expected propagate or cost-sets");
      }
      std::vector<Engine> engines;
      for (const auto& name : split_list(bench_engines)) {
        const auto e = engine_from_name(name);
        if (!e) throw InputError("--engine: unknown engine '" + name + "'");
        engines.push_back(*e);
      }
      const auto ns = int_list(bench_n, "--n");
      const auto ds = int_list(bench_d, "--d");
      for (int n : ns) {
        if (n < 1) throw InputError("--n: sizes must be >= 1");
      }
      for (int d : ds) {
        if (d < 0) throw InputError("--d: values must be >= 0");
      }
      const BenchClock clock = cpu ? BenchClock::ThreadCpu : BenchClock::Wall;
      std::cout << "engine,n,d,seconds\n";
      for (Engine e : engines) {
        for (int n : ns) {
          for (int d : ds) {
            const Instance inst = bench_instance(*family, n, d);
            const double t = time_engine(inst, e, reps, bscope, {}, clock, fastest ? RunStat::Fastest : RunStat::Mean);
            std::printf("%s,%d,%d,%.9f\n", to_string(e).c_str(), n, d, t);
            std::fflush(stdout);
          }
        }
      }
      return kExitOk;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const GuardExceeded& e) {
    std::cerr << "oracle guard: " << e.what() << "\n";
    return kExitInput;
  } catch (const StructureError& e) {
    std::cerr << "strict mode: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
