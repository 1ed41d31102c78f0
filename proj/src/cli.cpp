#include "flipwide/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flipwide/errors.hpp"
#include "flipwide/flipwide.hpp"
#include "flipwide/generators.hpp"
#include "flipwide/indiscernibles.hpp"
#include "flipwide/io.hpp"
#include "flipwide/oracles.hpp"
#include "flipwide/report.hpp"

namespace flipwide::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::string hex(std::uint64_t x) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << x;
  return s.str();
}

Graph load_graph(const std::string& path, Streams& io) {
  if (path == "-") return read_edge_list(io.in);
  return read_edge_list_file(path);
}

Sequence load_sequence(const std::string& spec, const Graph& g) {
  if (spec == "all") {
    std::vector<Vertex> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<Vertex>(i);
    return Sequence(std::move(v));
  }
  std::ifstream f(spec);
  if (!f) throw InputError("cannot open id file " + spec);
  Sequence s(read_id_list(f));
  check_in_range(s, g.size(), "id file");
  return s;
}

Json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json(std::ostream& os, const Json& j) { os << j.dump() << '\n'; }

void write_to(const std::string& path, const std::string& text, Streams& io) {
  if (path.empty() || path == "-") {
    io.out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Common {
  std::string graph = "-";
  bool timings = false;
};

struct BudgetOpts {
  std::size_t max_samples = 16;
  std::size_t max_rounds = 16;
  std::size_t min_length = 1;
  std::size_t k = 4;
  std::size_t pattern_budget = 4096;

  void attach(CLI::App* app) {
    app->add_option("--max-samples", max_samples, "Sample budget per level")->check(CLI::Range(1, 64));
    app->add_option("--max-rounds", max_rounds, "Round budget per level")->check(CLI::PositiveNumber);
    app->add_option("--min-length", min_length, "Minimum surviving sequence length")->check(CLI::PositiveNumber);
    app->add_option("--k", k, "Maximum pattern length for extraction")->check(CLI::PositiveNumber);
    app->add_option("--pattern-budget", pattern_budget, "Homogenisation passes per extraction")
        ->check(CLI::PositiveNumber);
  }
  SampleBudget budget() const { return {max_samples, max_rounds, min_length}; }
  ExtractionConfig extraction() const { return {1, k, pattern_budget, ExtractionStrategy::GreedyRamsey}; }
};

struct SearchOpts {
  std::size_t node_budget = 50'000'000;
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
  void attach(CLI::App* app) {
    app->add_option("--node-budget", node_budget, "Candidate tests per search pass");
    app->add_option("--restarts", restarts, "Randomized restarts after the exhaustive pass");
    app->add_option("--seed", seed, "Seed for randomized restarts");
  }
  SearchOptions options() const {
    SearchOptions o;
    o.node_budget = node_budget;
    o.restarts = restarts;
    o.seed = seed;
    return o;
  }
};

int cmd_generate(const std::vector<std::string>& args, std::uint64_t seed, const std::string& out,
                 Streams& io) {
  if (args.empty()) throw InputError("generate: missing family");
  const auto fam = parse_family(args[0]);
  if (!fam) throw InputError("generate: unknown family '" + args[0] + "'");
  const std::size_t arity = family_arity(*fam);
  if (args.size() != arity + 1)
    throw InputError("generate " + args[0] + ": expects " + std::to_string(arity) + " size parameter(s)");
  std::vector<std::size_t> p;
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(args[i], &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != args[i].size() || args[i].empty() || args[i][0] == '-')
      throw InputError("generate: bad size parameter '" + args[i] + "'");
    p.push_back(static_cast<std::size_t>(v));
  }
  FamilySpec spec{*fam, p[0], p.size() > 1 ? p[1] : 0, seed};
  write_to(out, to_edge_list(generate(spec)), io);
  return kOk;
}

int cmd_flip_widen(const std::string& command, const Common& c, const std::string& a_spec,
                   std::size_t radius, std::size_t target, const BudgetOpts& b,
                   const std::string& out, Streams& io) {
  const auto t0 = Clock::now();
  FlipWideRequest req;
  req.graph = load_graph(c.graph, io);
  req.a_set = load_sequence(a_spec, req.graph);
  req.radius = radius;
  req.target_size = target;
  req.budget = b.budget();
  req.extraction = b.extraction();

  FlipWideResult res;
  bool shortfall = false;
  try {
    res = flip_widen(req);
  } catch (const FlipWideShortfall& e) {
    res = e.result();
    shortfall = true;
    io.err << "flip-widen: " << e.what() << '\n';
  }
  const auto verdict = verify_flip_wide(req.graph, res, radius);
  Json result = result_to_json(res, radius, verdict.ok);
  if (!out.empty()) write_to(out, result.dump() + "\n", io);

  Json report{{"command", command},
              {"graph_digest", hex(graph_digest(req.graph))},
              {"result", result},
              {"shortfall", shortfall},
              {"target", target},
              {"verified", verdict.ok}};
  if (!verdict.ok) report["violation"] = verdict.detail;
  if (c.timings) report["timings_ms"] = Json{{"total", ms_since(t0)}};
  if (out.empty() || out != "-") write_json(io.out, report);
  if (!verdict.ok) {
    io.err << "flip-widen: verification failed: " << verdict.detail << '\n';
    return kVerificationFailed;
  }
  return shortfall ? kBudget : kOk;
}

int cmd_verify(const std::string& command, const Common& c, const std::string& result_path,
               std::optional<std::size_t> radius, Streams& io) {
  const Graph g = load_graph(c.graph, io);
  const LoadedResult loaded = result_from_json(load_json(result_path));
  const std::size_t r = radius.value_or(loaded.radius);
  const auto verdict = verify_flip_wide(g, loaded.result, r);
  Json report{{"command", command},
              {"graph_digest", hex(graph_digest(g))},
              {"radius", r},
              {"verified", verdict.ok}};
  if (!verdict.ok) {
    report["violation"] = verdict.detail;
    if (verdict.violation) report["violating_pair"] = {verdict.violation->first, verdict.violation->second};
    io.err << "verify: " << verdict.detail << '\n';
  }
  write_json(io.out, report);
  return verdict.ok ? kOk : kVerificationFailed;
}

int cmd_extract(const std::string& command, const Common& c, const std::string& phi_name,
                std::size_t k, std::size_t target, const std::string& seq_spec,
                const std::vector<Vertex>& constants, std::size_t alpha, std::size_t pattern_budget,
                ExtractionStrategy strategy, Streams& io) {
  const auto t0 = Clock::now();
  auto g = std::make_shared<const Graph>(load_graph(c.graph, io));
  const Sequence seq = load_sequence(seq_spec, *g);
  PhiSet phi;
  std::vector<Vertex> consts;
  if (phi_name == "edge") {
    phi = {Atom::edge()};
  } else {
    if (constants.empty()) throw InputError("extract: --phi eq needs --constants");
    consts = constants;
    phi = eq_phi_set(consts.size());
  }
  const EvalContext ctx(g, alpha, consts);
  ExtractionConfig cfg{target, k, pattern_budget, strategy};
  Sequence sub;
  bool shortfall = false;
  try {
    sub = extract_indiscernible(ctx, phi, seq, cfg);
  } catch (const ExtractionShortfall& e) {
    sub = e.achieved();
    shortfall = true;
    io.err << "extract: " << e.what() << '\n';
  }
  const auto check = is_delta_indiscernible(ctx, phi, PatternFamily::all_type_patterns(phi.size(), k), sub);
  Json report{{"command", command},
              {"graph_digest", hex(graph_digest(*g))},
              {"indiscernible", check.indiscernible},
              {"k", k},
              {"length", sub.size()},
              {"phi", phi_name},
              {"shortfall", shortfall},
              {"strategy", to_string(strategy)},
              {"subsequence", sub.items()},
              {"target", target},
              {"verified", check.indiscernible}};
  if (c.timings) report["timings_ms"] = Json{{"total", ms_since(t0)}};
  write_json(io.out, report);
  if (!check.indiscernible) return kVerificationFailed;
  return shortfall ? kBudget : kOk;
}

Json rank_json(const RankResult& r) {
  Json j{{"rank", r.rank}, {"indices", r.indices}};
  j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  return j;
}

int cmd_diagnose(const std::string& command, const Common& c, std::optional<std::size_t> order,
                 std::optional<std::size_t> shatter, std::optional<std::size_t> pairing,
                 bool alt_rank, const std::string& seq_spec, const SearchOpts& s, Streams& io) {
  const auto t0 = Clock::now();
  const Graph g = load_graph(c.graph, io);
  Json report{{"command", command}, {"graph_digest", hex(graph_digest(g))}};
  bool all_valid = true;
  auto search = [&](const char* key, std::optional<std::size_t> k, auto fn) {
    if (!k) return;
    const WitnessSearch w = fn(g, *k, s.options());
    const bool valid = w.witness ? validate_witness(g, *w.witness) : true;
    all_valid = all_valid && valid;
    report[key] = witness_to_json(w, valid);
  };
  search("order", order, order_property_witness);
  search("shattering", shatter, shattering_witness);
  search("pairing", pairing, pairing_index_witness);
  if (alt_rank) {
    const Sequence seq = load_sequence(seq_spec, g);
    report["alternation"] = rank_json(alternation_rank(g, seq));
    report["exception"] = rank_json(exception_rank(g, seq));
  }
  report["verified"] = all_valid;
  if (c.timings) report["timings_ms"] = Json{{"total", ms_since(t0)}};
  write_json(io.out, report);
  return all_valid ? kOk : kVerificationFailed;
}

int cmd_apply_flips(const Common& c, const std::string& flips_path, const std::string& out,
                    Streams& io) {
  const Graph g = load_graph(c.graph, io);
  const LoadedResult loaded = result_from_json(load_json(flips_path));
  for (const Flip& f : loaded.result.flip_set) {
    check_in_range(f.a, g.size(), "flip side");
    check_in_range(f.b, g.size(), "flip side");
  }
  write_to(out, to_edge_list(apply_flips(g, loaded.result.flip_set)), io);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Streams io{in, out, err};
  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);

  if (const char* t = std::getenv("FLIPWIDE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(t, &end, 10);
    if (end == t || *end != '\0' || v < 1) err << "ignoring invalid FLIPWIDE_THREADS='" << t << "'\n";
  }

  CLI::App app{"Flip-wideness toolkit"};
  app.name("flipwide");
  app.require_subcommand(1);
  Common common;
  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("-g,--graph", common.graph, "Edge-list file, '-' for stdin");
    sub->add_flag("--timings", common.timings, "Add wall-clock timings to the report");
  };

  auto* gen = app.add_subcommand("generate", "Write a generated graph as an edge list");
  std::vector<std::string> gen_args;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("family", gen_args, "Family name followed by its size parameters")->required();
  gen->add_option("--seed", gen_seed, "Seed for random families");
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  auto* fw = app.add_subcommand("flip-widen", "Compute B and flips F with B distance-r independent in G+F");
  add_graph(fw);
  std::string a_spec;
  std::size_t radius = 0, target = 1;
  std::string fw_out;
  BudgetOpts budget;
  fw->add_option("-A", a_spec, "Id file or 'all'")->required();
  fw->add_option("-r,--radius", radius, "Radius r")->required();
  fw->add_option("-m,--target", target, "Requested |B|")->check(CLI::PositiveNumber);
  fw->add_option("-o,--output", fw_out, "Write the result JSON here");
  budget.attach(fw);

  auto* ver = app.add_subcommand("verify", "Re-check a flip-widen result");
  add_graph(ver);
  std::string result_path;
  std::optional<std::size_t> ver_radius;
  ver->add_option("--result", result_path, "Result JSON")->required();
  ver->add_option("-r,--radius", ver_radius, "Radius (default: the one recorded in the result)");

  auto* ext = app.add_subcommand("extract", "Extract an indiscernible subsequence");
  add_graph(ext);
  std::string phi_name = "edge", seq_spec = "all";
  std::size_t ext_k = 4, ext_target = 1, alpha = 1, ext_budget = 4096;
  std::vector<Vertex> constants;
  ext->add_option("--phi", phi_name, "edge | eq")->check(CLI::IsMember({"edge", "eq"}));
  ext->add_option("--k", ext_k, "Maximum pattern length")->check(CLI::PositiveNumber);
  ext->add_option("-m,--target", ext_target, "Requested length")->check(CLI::PositiveNumber);
  ext->add_option("--seq", seq_spec, "Id file or 'all'");
  ext->add_option("--constants", constants, "Constants for --phi eq")->delimiter(',');
  ext->add_option("--alpha-radius", alpha, "Ball radius used by eq atoms");
  ext->add_option("--pattern-budget", ext_budget, "Homogenisation passes")->check(CLI::PositiveNumber);
  std::string ext_strategy = "greedy";
  ext->add_option("--strategy", ext_strategy, "greedy | maximum")->check(CLI::IsMember({"greedy", "maximum"}));

  auto* diag = app.add_subcommand("diagnose", "Search for instability and independence witnesses");
  add_graph(diag);
  std::optional<std::size_t> order, shatter, pairing;
  bool alt_rank = false;
  std::string diag_seq = "all";
  SearchOpts search;
  diag->add_option("--order", order, "Order property of size K");
  diag->add_option("--shatter", shatter, "Shattered set of size K");
  diag->add_option("--pairing", pairing, "Pairing index K");
  diag->add_flag("--alt-rank", alt_rank, "Alternation and exception rank of --seq");
  diag->add_option("--seq", diag_seq, "Id file or 'all'");
  search.attach(diag);

  auto* ap = app.add_subcommand("apply-flips", "Apply the flips of a result to a graph");
  add_graph(ap);
  std::string flips_path, ap_out;
  ap->add_option("--flips", flips_path, "Result JSON holding the flips")->required();
  ap->add_option("-o,--output", ap_out, "Output edge list (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_generate(gen_args, gen_seed, gen_out, io);
    if (*fw) return cmd_flip_widen(command, common, a_spec, radius, target, budget, fw_out, io);
    if (*ver) return cmd_verify(command, common, result_path, ver_radius, io);
    if (*ext)
      return cmd_extract(command, common, phi_name, ext_k, ext_target, seq_spec, constants, alpha,
                         ext_budget,
                         ext_strategy == "maximum" ? ExtractionStrategy::Maximum : ExtractionStrategy::GreedyRamsey,
                         io);
    if (*diag)
      return cmd_diagnose(command, common, order, shatter, pairing, alt_rank, diag_seq, search, io);
    if (*ap) return cmd_apply_flips(common, flips_path, ap_out, io);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantError& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const ModeError& e) {
    err << "mode: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace flipwide::cli
