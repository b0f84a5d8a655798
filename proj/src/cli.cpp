#include "picod/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "picod/bounds.hpp"
#include "picod/constructors.hpp"
#include "picod/error.hpp"
#include "picod/fixtures.hpp"
#include "picod/generate.hpp"
#include "picod/io.hpp"
#include "picod/oracle.hpp"

namespace picod::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t default_budget(std::uint64_t fallback) {
  const char* env = std::getenv("PICOD_BUDGET");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_argument, std::string("PICOD_BUDGET is not a number: ") + env);
  }
}

Instance load_instance(const std::string& name, std::ostream& err) {
  if (fs::exists(name)) {
    Instance inst = io::read_instance(name);
    if (inst.duplicates_removed() > 0) {
      err << "note: " << inst.duplicates_removed() << " duplicate request-set(s) removed\n";
    }
    return inst;
  }
  if (name == "example1") return fixtures::example1();
  if (name == "example2") return fixtures::example2();
  throw Error(ErrorCode::invalid_argument, "no such instance file: " + name);
}

Scheme load_scheme(const std::string& name) {
  if (fs::exists(name)) return io::read_scheme(name);
  if (name == "paper_scheme1") return fixtures::example1_scheme();
  if (name == "paper_scheme2") return fixtures::example2_scheme();
  throw Error(ErrorCode::invalid_argument, "no such scheme file: " + name);
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SyntaxError(1, 1, std::string("certificate is not JSON: ") + e.what());
  }
}

std::string set_text(const VertexSet& s) {
  std::string text = "{";
  for (std::size_t i = 0; i < s.size(); ++i) text += (i ? "," : "") + std::to_string(s[i]);
  return text + "}";
}

void print_supports(std::ostream& out, const Scheme& scheme) {
  const auto supports = scheme.supports();
  const auto& mat = scheme.matrix();
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    out << "x" << r + 1 << " =";
    bool first = true;
    for (std::size_t c = 0; c < mat.cols(); ++c) {
      const Element coef = mat.at(r, c);
      if (coef == 0) continue;
      out << (first ? " " : " + ");
      if (coef != 1) out << coef << "*";
      out << "b" << c + 1;
      first = false;
    }
    if (first) out << " 0";
    out << "\n";
  }
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::syntax_error:
    case ErrorCode::empty_request_set:
    case ErrorCode::index_out_of_range:
      return kParse;
    case ErrorCode::infeasible_params:
    case ErrorCode::no_scheme_within_max_len:
    case ErrorCode::instance_too_large:
      return kInfeasible;
    case ErrorCode::budget_exhausted:
      return kBudgetExhausted;
    default:
      return kUsage;
  }
}

const char* lower_label(LowerKind kind) {
  switch (kind) {
    case LowerKind::nesting_strict:
    case LowerKind::nesting_relaxed: return "nesting";
    case LowerKind::length1_refutation: return "length1";
    case LowerKind::mais: return "mais";
    case LowerKind::trivial: return "trivial";
  }
  return "?";
}

FieldOrder field_from(std::uint32_t p) {
  if (!is_prime(p) || p >= (1u << 16)) {
    throw Error(ErrorCode::invalid_argument, "field order must be a prime < 65536");
  }
  return FieldOrder(p);
}

// --- subcommands -----------------------------------------------------------

struct SolveArgs {
  std::string algo = "alg1";
  std::uint32_t field = 2;
  std::string instance, output;
  bool trace = false, skip_empty = false;
  std::uint64_t budget = 0;
};

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(a.instance, err);
  const FieldOrder field = field_from(a.field);
  std::optional<Scheme> scheme;
  json trace;
  if (a.algo == "alg1") {
    auto result = algorithm1(inst, {field, a.skip_empty});
    if (a.trace) trace = io::trace_to_json(result);
    scheme = std::move(result.scheme);
  } else if (a.algo == "grcov") {
    scheme = grcov_greedy(inst, field);
  } else if (a.algo == "cover") {
    const auto cover = min_cover_exact(inst, a.budget);
    if (!cover) {
      err << "cover search exhausted its budget of " << a.budget << " nodes\n";
      return kBudgetExhausted;
    }
    scheme = Scheme::from_supports(field, inst.message_count(), cover->supports);
  } else {
    err << "unknown algorithm '" << a.algo << "'\n";
    return kUsage;
  }

  const auto report = verify(inst, *scheme);
  if (!report.all_satisfied) {
    err << "internal error: constructed scheme leaves " << inst.client_count() - report.satisfied_count()
        << " client(s) unsatisfied\n";
    return kFailed;
  }
  out << "length " << scheme->length() << "\n";
  print_supports(out, *scheme);
  if (a.trace) out << trace.dump(2) << "\n";
  if (!a.output.empty()) io::write_scheme(*scheme, a.output);
  return kOk;
}

int do_verify(const std::string& inst_name, const std::string& scheme_name, bool as_json,
              std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(inst_name, err);
  const Scheme scheme = load_scheme(scheme_name);
  if (scheme.message_count() != inst.message_count()) {
    err << "scheme has " << scheme.message_count() << " columns, instance has "
        << inst.message_count() << " messages\n";
    return kUsage;
  }
  const auto report = verify(inst, scheme);
  if (as_json) {
    out << io::report_to_json(inst, report).dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < report.clients.size(); ++i) {
      const auto& c = report.clients[i];
      out << "client " << set_text(inst.request(i)) << ": ";
      if (c.satisfied) out << "decodes b" << c.decoded << "\n";
      else out << "UNSATISFIED\n";
    }
    out << "satisfied " << report.satisfied_count() << "/" << inst.client_count() << "\n";
  }
  return report.all_satisfied ? kOk : kFailed;
}

struct BoundArgs {
  std::string instance;
  std::string nesting;  // "", "strict" or "relaxed"
  bool mais = false, length1 = false;
  std::uint64_t budget = 0;
};

int do_bound(BoundArgs a, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(a.instance, err);
  if (a.nesting.empty() && !a.mais && !a.length1) {
    a.nesting = "both";
    a.mais = a.length1 = true;
  }
  if (!a.nesting.empty() && a.nesting != "strict" && a.nesting != "relaxed" && a.nesting != "both") {
    err << "--nesting takes strict or relaxed\n";
    return kUsage;
  }
  bool exhausted = false;
  out << "max_degree " << degrees(inst).max_degree << "\n";
  if (a.nesting == "strict" || a.nesting == "both") {
    const auto r = nesting_number(inst, NestingMode::strict, a.budget);
    out << "nesting strict " << r.length << (r.exact ? "" : " (budget exhausted, lower bound only)") << "\n";
    exhausted |= !r.exact;
    if (r.collection) {
      for (std::size_t l = 0; l < r.collection->levels.size(); ++l) {
        out << "  E" << l + 1 << ":";
        for (std::size_t c : r.collection->levels[l]) out << " " << set_text(inst.request(c));
        out << "\n";
      }
    }
  }
  if (a.nesting == "relaxed" || a.nesting == "both") {
    const auto r = nesting_number(inst, NestingMode::relaxed, a.budget);
    out << "nesting relaxed " << r.length << "\n";
    if (r.tree) {
      for (std::size_t k = 0; k < r.tree->nodes.size(); ++k) {
        const auto& node = r.tree->nodes[k];
        out << "  node " << k << " " << set_text(inst.request(node.client));
        if (node.first_child) out << " children " << *node.first_child << "," << *node.first_child + 1;
        out << "\n";
      }
    }
  }
  if (a.length1) {
    const auto d = decide_length1(inst, a.budget);
    if (!d.solvable) {
      out << "length1 unknown (budget exhausted)\n";
      exhausted = true;
    } else if (*d.solvable) {
      out << "length1 solvable with " << set_text(d.witness) << "\n";
    } else {
      out << "length1 impossible, lower bound 2\n";
    }
  }
  if (a.mais) {
    if (inst.message_count() > 64) {
      out << "mais skipped (more than 64 messages)\n";
    } else if (const auto r = mais_min_over_choices(inst, a.budget)) {
      out << "mais " << r->value << "\n  minimizing chain:";
      for (std::size_t k = 0; k < r->chain.clients.size(); ++k) {
        out << " " << set_text(inst.request(r->chain.clients[k])) << "->b" << r->chain.demands[k];
      }
      out << "\n";
    } else {
      out << "mais refused (decoding-choice product exceeds budget)\n";
      exhausted = true;
    }
  }
  return exhausted ? kBudgetExhausted : kOk;
}

Budgets budgets_from(std::uint64_t budget) {
  Budgets b;
  b.nesting = b.length1 = b.mais_product = b.cover = b.oracle = budget;
  return b;
}

int do_certify(const std::string& inst_name, std::uint64_t budget, const std::string& output,
               std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(inst_name, err);
  const auto cert = certify(inst, budgets_from(budget));
  out << "lower=" << cert.lower << " (" << lower_label(cert.lower_kind) << "), upper=" << cert.upper
      << ", " << (cert.tight ? "TIGHT" : "GAP") << "\n";
  const json doc = io::certificate_to_json(inst, cert);
  if (!output.empty()) {
    std::ofstream f(output);
    if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + output);
    f << doc.dump(2) << "\n";
  }
  return kOk;
}

int do_check(const std::string& inst_name, const std::string& cert_path, std::ostream& out,
             std::ostream& err) {
  const Instance inst = load_instance(inst_name, err);
  const auto result = io::check_certificate(inst, load_json(cert_path));
  if (result.ok) {
    out << "certificate OK\n";
    return kOk;
  }
  for (const auto& p : result.problems) out << "REJECTED: " << p << "\n";
  return kFailed;
}

struct OracleArgs {
  std::string instance, output;
  std::uint32_t field = 2;
  std::size_t max_len = 4;
  std::uint64_t budget = 0;
};

int do_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(a.instance, err);
  OracleOptions options;
  options.field = field_from(a.field);
  options.max_len = a.max_len;
  options.budget = a.budget;
  const auto r = exact_linear_optimum(inst, options);
  if (!r.exact) {
    err << "oracle budget exhausted after " << r.explored << " subspaces\n";
    out << "upper " << r.optimum << " (not exact)\n";
    return kBudgetExhausted;
  }
  out << "optimum " << r.optimum << " over GF(" << r.field.value() << "), " << r.explored
      << " subspaces explored\n";
  print_supports(out, r.witness);
  if (!a.output.empty()) io::write_scheme(r.witness, a.output);
  return kOk;
}

int do_components(const std::string& inst_name, bool solve_combined, std::ostream& out,
                  std::ostream& err) {
  const Instance inst = load_instance(inst_name, err);
  const auto partition = components(inst);
  for (std::size_t i = 0; i < partition.parts.size(); ++i) {
    out << "component " << i + 1 << ": vertices " << set_text(partition.vertex_sets[i]) << ", "
        << partition.parts[i].client_count() << " client(s)\n";
  }
  if (!solve_combined) return kOk;
  std::vector<ComponentScheme> parts;
  for (const auto& part : partition.parts) parts.push_back({part, algorithm1(part).scheme});
  const Scheme combined = combine_component_schemes(parts);
  const auto report = verify(inst, combined);
  if (!report.all_satisfied) {
    err << "internal error: combined scheme does not verify\n";
    return kFailed;
  }
  out << "combined length " << combined.length() << "\n";
  print_supports(out, combined);
  return kOk;
}

int do_gen(const GeneratorParams& p, const std::string& model, const std::string& output,
           std::ostream& out) {
  GeneratorParams params = p;
  params.model = parse_model(model);
  const Instance inst = generate(params);
  if (output.empty()) out << io::serialize_instance(inst);
  else io::write_instance(inst, output);
  return kOk;
}

struct BenchRow {
  std::string name;
  std::uint32_t m = 0;
  std::size_t n = 0;
  std::uint32_t delta = 0;
  std::size_t alg1 = 0, grcov = 0;
  double alg1_ms = 0, grcov_ms = 0;
};

template <typename F>
double time_ms(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int do_bench(const std::string& corpus, const std::string& report, std::uint64_t seed,
             std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, Instance>> instances;
  if (!corpus.empty()) {
    if (!fs::is_directory(corpus)) {
      err << "not a directory: " << corpus << "\n";
      return kUsage;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) instances.emplace_back(f.filename().string(), io::read_instance(f));
  } else {
    for (std::uint32_t i = 0; i < 12; ++i) {
      GeneratorParams p;
      p.model = GeneratorModel::uniform_k;
      p.messages = 20 + 10 * i;
      p.clients = 20 + 10 * i;
      p.set_size = 3 + i % 4;
      p.seed = seed + i;
      instances.emplace_back("uniform-k-" + std::to_string(i), generate(p));
    }
  }

  std::vector<BenchRow> rows;
  for (const auto& [name, inst] : instances) {
    BenchRow row{name, inst.message_count(), inst.client_count(), degrees(inst).max_degree};
    std::optional<Scheme> a, g;
    row.alg1_ms = time_ms([&] { a = algorithm1(inst).scheme; });
    row.grcov_ms = time_ms([&] { g = grcov_greedy(inst); });
    row.alg1 = a->length();
    row.grcov = g->length();
    rows.push_back(row);
  }

  std::ostringstream table;
  table << std::left << std::setw(24) << "instance" << std::right << std::setw(7) << "m"
        << std::setw(7) << "n" << std::setw(7) << "delta" << std::setw(7) << "alg1" << std::setw(7)
        << "grcov" << std::setw(12) << "alg1_ms" << std::setw(12) << "grcov_ms" << "\n";
  table << std::fixed << std::setprecision(3);
  for (const auto& r : rows) {
    table << std::left << std::setw(24) << r.name << std::right << std::setw(7) << r.m
          << std::setw(7) << r.n << std::setw(7) << r.delta << std::setw(7) << r.alg1
          << std::setw(7) << r.grcov << std::setw(12) << r.alg1_ms << std::setw(12) << r.grcov_ms
          << "\n";
  }
  out << table.str();
  if (!report.empty()) {
    std::ofstream f(report);
    if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + report);
    f << table.str();
  }
  return kOk;
}

int do_crosscheck(const std::string& inst_name, std::uint64_t budget, std::ostream& out,
                  std::ostream& err) {
  const Instance inst = load_instance(inst_name, err);
  Budgets b = budgets_from(budget);
  const auto report = cross_check(inst, b);
  out << io::cross_check_to_json(report).dump(2) << "\n";
  return report.ok() ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pliable index coding: schemes, bounds and certificates", "picod"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::kToolVersion);

  std::uint64_t budget = 0;
  try {
    budget = default_budget(kDefaultSearchBudget);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  SolveArgs solve;
  solve.budget = budget;
  auto* solve_cmd = app.add_subcommand("solve", "Construct and verify a scheme");
  solve_cmd->add_option("--algo", solve.algo, "alg1, grcov or cover")
      ->check(CLI::IsMember({"alg1", "grcov", "cover"}));
  solve_cmd->add_option("--field", solve.field, "Prime field order");
  solve_cmd->add_option("-o,--output", solve.output, "Write the scheme file");
  solve_cmd->add_flag("--trace", solve.trace, "Print the alg1 round trace as JSON");
  solve_cmd->add_flag("--skip-empty-rounds", solve.skip_empty, "Start delta at the max degree");
  solve_cmd->add_option("--budget", solve.budget, "Node budget for --algo cover");
  solve_cmd->add_option("instance", solve.instance)->required();

  std::string verify_inst, verify_scheme;
  bool verify_json = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check which clients a scheme satisfies");
  verify_cmd->add_flag("--json", verify_json);
  verify_cmd->add_option("instance", verify_inst)->required();
  verify_cmd->add_option("scheme", verify_scheme)->required();

  BoundArgs bound;
  bound.budget = budget;
  auto* bound_cmd = app.add_subcommand("bound", "Lower bounds with witnesses");
  bound_cmd->add_flag("--nesting{strict}", bound.nesting, "Nesting number, strict or relaxed");
  bound_cmd->add_flag("--mais", bound.mais, "Minimum MAIS over decoding choices");
  bound_cmd->add_flag("--length1", bound.length1, "Decide whether one transmission suffices");
  bound_cmd->add_option("--budget", bound.budget);
  bound_cmd->add_option("instance", bound.instance)->required();

  std::string certify_inst, certify_out;
  std::uint64_t certify_budget = budget;
  auto* certify_cmd = app.add_subcommand("certify", "Bracket the optimal length");
  certify_cmd->add_option("--budget", certify_budget);
  certify_cmd->add_option("-o,--output", certify_out, "Write the certificate JSON");
  certify_cmd->add_option("instance", certify_inst)->required();

  std::string check_inst, check_cert;
  auto* check_cmd = app.add_subcommand("check", "Re-validate a certificate");
  check_cmd->add_option("instance", check_inst)->required();
  check_cmd->add_option("certificate", check_cert)->required();

  OracleArgs oracle;
  oracle.budget = default_budget(OracleOptions{}.budget);
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact linear optimum by subspace enumeration");
  oracle_cmd->add_option("--field", oracle.field);
  oracle_cmd->add_option("--max-len", oracle.max_len);
  oracle_cmd->add_option("--budget", oracle.budget);
  oracle_cmd->add_option("-o,--output", oracle.output, "Write the optimal scheme");
  oracle_cmd->add_option("instance", oracle.instance)->required();

  std::string comp_inst;
  bool solve_combined = false;
  auto* comp_cmd = app.add_subcommand("components", "List connected components");
  comp_cmd->add_flag("--solve-combined", solve_combined, "Solve each part and combine");
  comp_cmd->add_option("instance", comp_inst)->required();

  GeneratorParams gen;
  std::string gen_model = "uniform-k", gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--model", gen_model)->check(CLI::IsMember({"matching", "uniform-k", "nested-tree"}));
  gen_cmd->add_option("-m,--messages", gen.messages);
  gen_cmd->add_option("-n,--clients", gen.clients);
  gen_cmd->add_option("-k,--set-size", gen.set_size);
  gen_cmd->add_option("--depth", gen.depth);
  gen_cmd->add_option("--noise", gen.noise);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("-o,--output", gen_out);

  std::string bench_corpus, bench_out;
  std::uint64_t bench_seed = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Compare alg1, grcov and the max degree");
  bench_cmd->add_option("--corpus", bench_corpus, "Directory of instance files");
  bench_cmd->add_option("--out", bench_out, "Write the table to a file");
  bench_cmd->add_option("--seed", bench_seed, "Seed of the generated corpus without --corpus");

  std::string cc_inst;
  std::uint64_t cc_budget = budget;
  auto* cc_cmd = app.add_subcommand("crosscheck", "Check the bound chain on a small instance");
  cc_cmd->add_option("--budget", cc_budget);
  cc_cmd->add_option("instance", cc_inst)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return do_solve(solve, out, err);
    if (*verify_cmd) return do_verify(verify_inst, verify_scheme, verify_json, out, err);
    if (*bound_cmd) return do_bound(bound, out, err);
    if (*certify_cmd) return do_certify(certify_inst, certify_budget, certify_out, out, err);
    if (*check_cmd) return do_check(check_inst, check_cert, out, err);
    if (*oracle_cmd) return do_oracle(oracle, out, err);
    if (*comp_cmd) return do_components(comp_inst, solve_combined, out, err);
    if (*gen_cmd) return do_gen(gen, gen_model, gen_out, out);
    if (*bench_cmd) return do_bench(bench_corpus, bench_out, bench_seed, out, err);
    if (*cc_cmd) return do_crosscheck(cc_inst, cc_budget, out, err);
  } catch (const SyntaxError& e) {
    err << "parse error at line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_for(e);
  }
  return kUsage;
}

}  // namespace picod::cli
