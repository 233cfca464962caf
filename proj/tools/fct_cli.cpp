// Command-line front end: solve, verify, certify, oracle, generate, bench.
//
// Exit codes: 0 success, 1 internal failure, 2 user error.

#include "fct/fct.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using fct::Instance;
using fct::Rational;
using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fct::UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fct::UsageError("cannot write " + path);
  out << text;
}

Rational parse_epsilon(const std::string& text) {
  auto eps = fct::parse_rational(text);
  if (!eps) throw fct::UsageError("malformed epsilon '" + text + "'");
  return *eps;
}

struct SolveOptions {
  std::string variant;
  std::string mode = "exact";
  std::size_t swap = 2;
  std::size_t max_k = 5;
  std::string epsilon;
};

struct SolveOutcome {
  fct::FlowSolution flow;
  Rational cost;
  std::string algorithm;
  json params = json::object();
  json extra = json::object();
};

SolveOutcome run_solver(const Instance& inst, const SolveOptions& opt) {
  SolveOutcome out;
  const std::string& v = opt.variant;
  if (v == "pfct-s") {
    out.algorithm = "greedy";
    out.flow = fct::greedy_solve(inst);
    out.extra["lp_cost"] = fct::to_string(fct::lp_cost(inst, out.flow));
    out.extra["opt_lower_bound"] = fct::to_string(fct::opt_lower_bound(inst));
    out.extra["greedy_upper_bound"] = fct::to_string(fct::greedy_upper_bound(inst));
  } else if (v == "pfct-u") {
    fct::PackingMode mode;
    if (opt.mode == "exact") {
      mode.kind = fct::PackingMode::Kind::exact;
    } else if (opt.mode == "ls") {
      mode.kind = fct::PackingMode::Kind::local_search;
      out.params["swap"] = opt.swap;
    } else {
      throw fct::UsageError("unknown mode '" + opt.mode + "'");
    }
    mode.swap = opt.swap;
    mode.max_k = opt.max_k;
    out.params["mode"] = opt.mode;
    out.params["k"] = opt.max_k;
    out.algorithm = opt.mode == "exact" ? "packing-exact" : "packing-local-search";
    auto result = fct::solve_pfct_u(inst, mode);
    out.flow = std::move(result.flow);
    out.extra["parts"] = result.partition.parts.size();
  } else if (v == "fct-u") {
    out.algorithm = "linear-forest";
    out.flow = fct::solve_fct_u(inst);
  } else if (v == "fct-bicriteria") {
    if (opt.epsilon.empty()) throw fct::UsageError("--epsilon is required for fct-bicriteria");
    const Rational eps = parse_epsilon(opt.epsilon);
    out.algorithm = "bicriteria-rounding";
    out.params["epsilon"] = fct::to_string(eps);
    auto result = fct::solve_bicriteria(inst, eps);
    out.flow = std::move(result.flow);
    out.extra["lp_value"] = fct::to_string(result.lp_value);
    out.extra["cost_bound"] = fct::to_string(result.cost_bound);
  } else if (v == "pfct-ptas") {
    if (opt.epsilon.empty()) throw fct::UsageError("--epsilon is required for pfct-ptas");
    const Rational eps = parse_epsilon(opt.epsilon);
    out.algorithm = "guessed-set-lp";
    out.params["epsilon"] = fct::to_string(eps);
    auto result = fct::ptas_solve(inst, eps);
    out.flow = std::move(result.flow);
    out.extra["guesses"] = result.guesses;
  } else {
    throw fct::UsageError("unknown variant '" + v + "'");
  }
  out.cost = fct::evaluate_cost(inst, out.flow);
  return out;
}

struct OracleOutcome {
  Rational cost;
  fct::FlowSolution flow;
  std::string method;
};

OracleOutcome run_oracle(const Instance& inst) {
  const auto tag = fct::classify_variant(inst);
  if (tag.pure && tag.uniform && inst.num_sources() + inst.num_sinks() <= 16) {
    auto result = fct::exact_balanced_partition(inst);
    const auto elements = static_cast<std::int64_t>(inst.num_sources() + inst.num_sinks());
    return {Rational(elements - static_cast<std::int64_t>(result.parts)),
            fct::flow_within_balanced_sets(result.partition), "balanced-partition"};
  }
  try {
    auto result = fct::exact_fct_by_assignment(inst);
    return {result.cost, std::move(result.flow), "assignment"};
  } catch (const fct::GuardError&) {
    auto result = fct::exact_fct(inst);
    return {result.cost, std::move(result.flow), "support-enumeration"};
  }
}

json ratio_fields(const Rational& cost, const std::optional<Rational>& oracle) {
  json j = json::object();
  if (!oracle) return j;
  j["oracle_cost"] = fct::to_string(*oracle);
  if (*oracle != 0)
    j["ratio"] = fct::to_string(cost / *oracle);
  else
    j["ratio"] = cost == 0 ? "1" : "inf";
  return j;
}

int cmd_solve(const std::string& input, const std::string& out_path, const SolveOptions& opt,
              bool with_oracle, bool timing) {
  const Instance inst = fct::parse_instance(read_file(input));
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome result = run_solver(inst, opt);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  if (auto violation = fct::check_feasibility(inst, result.flow))
    throw fct::Error("solver produced an infeasible flow: " + *violation);

  json report;
  report["instance"] = input;
  report["variant"] = opt.variant;
  report["algorithm"] = result.algorithm;
  report["cost"] = fct::to_string(result.cost);
  std::optional<Rational> oracle;
  if (with_oracle) oracle = run_oracle(inst).cost;
  report.update(ratio_fields(result.cost, oracle));
  report["params"] = result.params;
  for (auto& [key, value] : result.extra.items()) report[key] = value;
  if (timing)
    report["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  if (!out_path.empty()) write_file(out_path, fct::serialize_solution(result.flow));
  std::cout << report.dump() << '\n';
  return 0;
}

int cmd_verify(const std::string& input, const std::string& solution) {
  const Instance inst = fct::parse_instance(read_file(input));
  const fct::FlowSolution x = fct::parse_solution(read_file(solution));
  if (auto violation = fct::check_feasibility(inst, x)) {
    std::cout << "violation: " << *violation << '\n';
    return 2;
  }
  std::cout << "ok cost " << fct::to_string(fct::evaluate_cost(inst, x)) << '\n';
  return 0;
}

int cmd_certify(const std::vector<std::string>& perturb) {
  fct::LpCertificate cert = fct::nominal_certificate();
  for (const auto& item : perturb) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw fct::UsageError("expected NAME=p/q, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const Rational value = parse_epsilon(item.substr(eq + 1));
    auto& p = cert.primal;
    auto& d = cert.dual;
    const std::map<std::string, Rational*> slots{
        {"x3", &p.x3}, {"x4", &p.x4}, {"x5", &p.x5},   {"x6", &p.x6}, {"z", &p.z},   {"r", &p.r},
        {"alpha", &d.alpha}, {"beta", &d.beta}, {"y3", &d.y3}, {"y4", &d.y4}, {"y5", &d.y5}};
    auto it = slots.find(name);
    if (it == slots.end()) throw fct::UsageError("unknown certificate variable '" + name + "'");
    *it->second = value;
  }
  const auto& p = cert.primal;
  const auto& d = cert.dual;
  using fct::to_string;
  std::cout << "primal x3=" << to_string(p.x3) << " x4=" << to_string(p.x4)
            << " x5=" << to_string(p.x5) << " x6=" << to_string(p.x6) << " z=" << to_string(p.z)
            << " r=" << to_string(p.r) << '\n'
            << "dual alpha=" << to_string(d.alpha) << " beta=" << to_string(d.beta)
            << " y3=" << to_string(d.y3) << " y4=" << to_string(d.y4) << " y5=" << to_string(d.y5)
            << '\n'
            << "value " << to_string(cert.value) << '\n';
  const auto failures = fct::check_certificate(cert);
  for (const auto& f : failures) std::cout << "FAIL " << f << '\n';
  std::cout << (failures.empty() ? "certificate valid" : "certificate invalid") << '\n';
  return failures.empty() ? 0 : 1;
}

int cmd_oracle(const std::string& input, const std::string& out_path) {
  const Instance inst = fct::parse_instance(read_file(input));
  auto result = run_oracle(inst);
  if (!out_path.empty()) write_file(out_path, fct::serialize_solution(result.flow));
  json report;
  report["instance"] = input;
  report["method"] = result.method;
  report["cost"] = fct::to_string(result.cost);
  std::cout << report.dump() << '\n';
  return 0;
}

Instance random_family(const std::string& family, fct::Rng& rng, std::size_t n, std::size_t m,
                       std::int64_t max_supply, std::int64_t max_f, std::int64_t max_c) {
  if (family == "pfct-s") return fct::random_pfct_s(rng, n, m, max_supply, max_f);
  if (family == "pfct-u") return fct::random_pfct_u(rng, n, m, max_supply);
  if (family == "fct-u") return fct::random_fct_u(rng, n, m, max_supply, max_c);
  if (family == "fct") return fct::random_fct(rng, n, m, max_supply, max_f, max_c);
  if (family == "pfct") return fct::random_pfct(rng, n, m, max_supply, max_f);
  throw fct::UsageError("unknown family '" + family + "'");
}

struct GenerateOptions {
  std::string from, family, input, out;
  std::uint64_t seed = 0;
  std::int64_t delta = 0;
  std::size_t bound = 6;
  std::size_t n = 2, m = 3;
  std::int64_t max_supply = 10, max_f = 20, max_c = 5;
};

int cmd_generate(const GenerateOptions& g) {
  Instance inst;
  json report;
  if (!g.from.empty()) {
    if (g.input.empty()) throw fct::UsageError("--input is required with --from");
    const std::string text = read_file(g.input);
    if (g.from == "dst") {
      inst = fct::split_digraph_to_bipartite(fct::dst_to_pfct_digraph(fct::parse_dst(text))).instance;
    } else if (g.from == "setcover") {
      inst = fct::setcover_to_fct_s(fct::parse_set_cover(text));
    } else if (g.from == "3dm") {
      const auto tdm = fct::parse_three_dm(text);
      const std::int64_t delta = g.delta > 0 ? g.delta : fct::default_delta(tdm.n, g.bound);
      auto result = fct::threedm_to_pfct_u(tdm, delta, g.seed, g.bound);
      inst = std::move(result.instance);
      report["delta"] = delta;
      report["attempts"] = result.attempts;
      report["seed"] = g.seed;
    } else {
      throw fct::UsageError("unknown source problem '" + g.from + "'");
    }
    report["from"] = g.from;
  } else if (!g.family.empty()) {
    fct::Rng rng(g.seed);
    inst = random_family(g.family, rng, g.n, g.m, g.max_supply, g.max_f, g.max_c);
    report["family"] = g.family;
    report["seed"] = g.seed;
  } else {
    throw fct::UsageError("one of --from or --family is required");
  }
  const std::string text = fct::serialize_instance(inst);
  if (g.out.empty()) {
    std::cout << text;
    return 0;
  }
  write_file(g.out, text);
  report["out"] = g.out;
  report["sources"] = inst.num_sources();
  report["sinks"] = inst.num_sinks();
  std::cout << report.dump() << '\n';
  return 0;
}

// Config: {"families": [{"family": "pfct-s", "sizes": [[n, m], ...],
//   "seeds": [first, last], "max_supply": 12, "max_f": 20, "max_c": 5,
//   "solvers": [{"variant": "pfct-s", "mode": "exact", "swap": 2,
//   "epsilon": "1/4"}, ...]}, ...]}
int cmd_bench(const std::string& config_path, const std::string& out_prefix) {
  json config;
  try {
    config = json::parse(read_file(config_path));
  } catch (const json::exception& e) {
    throw fct::UsageError(std::string("malformed config: ") + e.what());
  }
  struct Row {
    std::string family;
    std::size_t n, m;
    std::uint64_t seed;
    std::string solver;
    std::string status = "ok";
    std::optional<Rational> cost, oracle;
  };
  std::vector<Row> rows;
  try {
    for (const auto& fam : config.value("families", json::array())) {
      const std::string family = fam.at("family");
      const auto seeds = fam.value("seeds", std::vector<std::uint64_t>{0, 0});
      if (seeds.size() != 2) throw fct::UsageError("seeds must be [first, last]");
      for (const auto& size : fam.value("sizes", json::array())) {
        const std::size_t n = size.at(0), m = size.at(1);
        for (std::uint64_t seed = seeds[0]; seed <= seeds[1]; ++seed) {
          fct::Rng rng(seed);
          const Instance inst = random_family(family, rng, n, m, fam.value("max_supply", 10),
                                              fam.value("max_f", 20), fam.value("max_c", 5));
          std::optional<Rational> oracle;
          std::string oracle_status;
          try {
            oracle = run_oracle(inst).cost;
          } catch (const fct::GuardError& e) {
            oracle_status = std::string("oracle guard: ") + e.what();
          }
          for (const auto& s : fam.value("solvers", json::array())) {
            SolveOptions opt;
            opt.variant = s.at("variant");
            opt.mode = s.value("mode", "exact");
            opt.swap = s.value("swap", 2);
            opt.max_k = s.value("k", 5);
            opt.epsilon = s.value("epsilon", "");
            std::string label = opt.variant;
            if (opt.variant == "pfct-u") label += "/" + opt.mode;
            if (!opt.epsilon.empty()) label += "/" + opt.epsilon;
            Row row{family, n, m, seed, label, "ok", std::nullopt, oracle};
            try {
              row.cost = run_solver(inst, opt).cost;
              if (!oracle_status.empty()) row.status = oracle_status;
            } catch (const fct::GuardError& e) {
              row.status = std::string("guard: ") + e.what();
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
  } catch (const json::exception& e) {
    throw fct::UsageError(std::string("malformed config: ") + e.what());
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.family, a.n, a.m, a.seed) < std::tie(b.family, b.n, b.m, b.seed);
  });

  std::ostringstream csv, jsonl;
  csv << "family,n,m,seed,solver,cost,oracle_cost,ratio,status\n";
  std::map<std::string, Rational> max_ratio;
  std::map<std::string, bool> unbounded;
  for (const auto& r : rows) {
    json j;
    j["family"] = r.family;
    j["n"] = r.n;
    j["m"] = r.m;
    j["seed"] = r.seed;
    j["solver"] = r.solver;
    j["cost"] = r.cost ? fct::to_string(*r.cost) : "";
    if (r.cost) {
      j.update(ratio_fields(*r.cost, r.oracle));
      if (r.oracle) {
        if (*r.oracle != 0) {
          const Rational ratio = *r.cost / *r.oracle;
          auto it = max_ratio.find(r.solver);
          if (it == max_ratio.end() || ratio > it->second) max_ratio[r.solver] = ratio;
        } else if (*r.cost != 0) {
          unbounded[r.solver] = true;
        }
      }
    }
    j["status"] = r.status;
    jsonl << j.dump() << '\n';
    csv << r.family << ',' << r.n << ',' << r.m << ',' << r.seed << ',' << r.solver << ','
        << j["cost"].get<std::string>() << ',' << j.value("oracle_cost", "") << ','
        << j.value("ratio", "") << ',' << r.status << '\n';
  }
  std::ostringstream summary;
  for (const auto& [solver, ratio] : max_ratio)
    summary << "max_ratio " << solver << ' ' << (unbounded[solver] ? "inf" : fct::to_string(ratio))
            << '\n';

  if (out_prefix.empty()) {
    std::cout << csv.str() << jsonl.str() << summary.str();
  } else {
    write_file(out_prefix + ".csv", csv.str());
    write_file(out_prefix + ".jsonl", jsonl.str());
    std::cout << summary.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed charge transportation solvers"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  std::string input, out, solution;
  bool with_oracle = false, timing = false;
  auto* solve = app.add_subcommand("solve", "Run an approximation algorithm");
  solve->add_option("--variant", solve_opt.variant, "pfct-s, pfct-u, fct-u, fct-bicriteria, pfct-ptas")
      ->required()
      ->check(CLI::IsMember({"pfct-s", "pfct-u", "fct-u", "fct-bicriteria", "pfct-ptas"}));
  solve->add_option("--input", input, "Instance file")->required();
  solve->add_option("--out", out, "Write the solution here");
  solve->add_option("--mode", solve_opt.mode, "Packing mode for pfct-u")
      ->check(CLI::IsMember({"exact", "ls"}));
  solve->add_option("--swap", solve_opt.swap, "Local search swap size")->check(CLI::PositiveNumber);
  solve->add_option("--k", solve_opt.max_k, "Largest packed set size (3..6)")->check(CLI::Range(3, 6));
  solve->add_option("--epsilon", solve_opt.epsilon, "p/q");
  solve->add_flag("--oracle", with_oracle, "Also compute the exact optimum and the ratio");
  solve->add_flag("--timing", timing, "Include wall time in the report");

  auto* verify = app.add_subcommand("verify", "Check a solution against an instance");
  verify->add_option("--input", input, "Instance file")->required();
  verify->add_option("--solution", solution, "Solution file")->required();

  std::vector<std::string> perturb;
  auto* certify = app.add_subcommand("certify", "Check the factor-revealing LP certificate");
  std::string which;
  certify->add_option("which", which, "Certificate name")->required()->check(CLI::IsMember({"lp65"}));
  certify->add_option("--perturb", perturb, "Override a certificate entry, NAME=p/q");

  auto* oracle = app.add_subcommand("oracle", "Exact optimum by brute force");
  oracle->add_option("--input", input, "Instance file")->required();
  oracle->add_option("--out", out, "Write the optimal solution here");

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Build an instance from a reduction or a random family");
  generate->add_option("--from", gen.from, "dst, setcover or 3dm")
      ->check(CLI::IsMember({"dst", "setcover", "3dm"}));
  generate->add_option("--family", gen.family, "pfct-s, pfct-u, fct-u, fct or pfct");
  generate->add_option("--input", gen.input, "Source problem file");
  generate->add_option("--out", gen.out, "Output instance file");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--delta", gen.delta, "3dm demand scale");
  generate->add_option("--bound", gen.bound, "3dm independence bound")->check(CLI::Range(1, 6));
  generate->add_option("--n", gen.n, "Sources (random families)");
  generate->add_option("--m", gen.m, "Sinks (random families)");
  generate->add_option("--max-supply", gen.max_supply, "Largest supply (random families)");
  generate->add_option("--max-f", gen.max_f, "Largest fixed cost (random families)");
  generate->add_option("--max-c", gen.max_c, "Largest linear cost (random families)");

  std::string config, out_prefix;
  auto* bench = app.add_subcommand("bench", "Ratio table over seeded random families");
  bench->add_option("--config", config, "JSON config")->required();
  bench->add_option("--out", out_prefix, "Write PREFIX.csv and PREFIX.jsonl");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(input, out, solve_opt, with_oracle, timing);
    if (*verify) return cmd_verify(input, solution);
    if (*certify) return cmd_certify(perturb);
    if (*oracle) return cmd_oracle(input, out);
    if (*generate) return cmd_generate(gen);
    if (*bench) return cmd_bench(config, out_prefix);
  } catch (const fct::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
