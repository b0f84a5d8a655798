#include "picod/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "picod/error.hpp"

namespace picod::io {

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

// Non-empty lines with comments stripped.
std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i == raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::uint64_t to_number(const Line& line, const Token& token) {
  std::uint64_t value = 0;
  const auto* first = token.text.data();
  const auto* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw SyntaxError(line.number, token.column, "expected a non-negative integer, got '" +
                                                     token.text + "'");
  }
  return value;
}

void expect_keyword(const Line& line, const char* keyword, std::size_t arity) {
  if (line.tokens[0].text != keyword) {
    throw SyntaxError(line.number, line.tokens[0].column,
                      std::string("expected '") + keyword + "', got '" + line.tokens[0].text + "'");
  }
  if (arity != SIZE_MAX && line.tokens.size() != arity + 1) {
    throw SyntaxError(line.number, line.tokens[0].column,
                      std::string("'") + keyword + "' takes " + std::to_string(arity) +
                          " value(s)");
  }
}

void expect_header(const std::vector<Line>& lines, const char* magic) {
  if (lines.empty()) throw SyntaxError(1, 1, std::string("empty document, expected '") + magic + "'");
  const Line& header = lines.front();
  expect_keyword(header, magic, 1);
  if (to_number(header, header.tokens[1]) != 1) {
    throw SyntaxError(header.number, header.tokens[1].column, "unsupported format version");
  }
}

std::size_t end_line(const std::vector<Line>& lines) {
  return lines.empty() ? 1 : lines.back().number + 1;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + path.string());
  out << text;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  const auto lines = tokenize(in);
  expect_header(lines, "picod-instance");
  if (lines.size() < 2) throw SyntaxError(end_line(lines), 1, "missing 'messages' line");
  expect_keyword(lines[1], "messages", 1);
  const std::uint64_t m = to_number(lines[1], lines[1].tokens[1]);
  if (m == 0 || m > std::numeric_limits<std::uint32_t>::max()) {
    throw SyntaxError(lines[1].number, lines[1].tokens[1].column, "message count out of range");
  }

  std::vector<VertexSet> requests;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const Line& line = lines[i];
    expect_keyword(line, "client", SIZE_MAX);
    if (line.tokens.size() == 1) {
      throw Error(ErrorCode::empty_request_set,
                  "line " + std::to_string(line.number) + ": client with an empty request-set");
    }
    VertexSet set;
    for (std::size_t k = 1; k < line.tokens.size(); ++k) {
      const std::uint64_t v = to_number(line, line.tokens[k]);
      if (v < 1 || v > m) {
        throw Error(ErrorCode::index_out_of_range,
                    "line " + std::to_string(line.number) + ", column " +
                        std::to_string(line.tokens[k].column) + ": message " + line.tokens[k].text +
                        " outside [1.." + std::to_string(m) + "]");
      }
      set.push_back(static_cast<Vertex>(v));
    }
    requests.push_back(std::move(set));
  }
  if (requests.empty()) throw SyntaxError(end_line(lines), 1, "instance has no clients");
  return Instance::build(static_cast<std::uint32_t>(m), std::move(requests));
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance read_instance(const std::filesystem::path& path) {
  return parse_instance_text(read_file(path));
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "picod-instance 1\n";
  out << "messages " << inst.message_count() << "\n";
  for (const auto& r : inst.requests()) {
    out << "client";
    for (Vertex v : r) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  write_file(path, serialize_instance(inst));
}

Scheme parse_scheme(std::istream& in) {
  const auto lines = tokenize(in);
  expect_header(lines, "picod-scheme");
  if (lines.size() < 4) throw SyntaxError(end_line(lines), 1, "missing field/messages/length lines");
  expect_keyword(lines[1], "field", 1);
  expect_keyword(lines[2], "messages", 1);
  expect_keyword(lines[3], "length", 1);

  const std::uint64_t p = to_number(lines[1], lines[1].tokens[1]);
  if (p >= (1u << 16) || !is_prime(static_cast<std::uint32_t>(p))) {
    throw SyntaxError(lines[1].number, lines[1].tokens[1].column, "field order must be a prime < 65536");
  }
  const FieldOrder field(static_cast<std::uint32_t>(p));
  const std::uint64_t m = to_number(lines[2], lines[2].tokens[1]);
  if (m > std::numeric_limits<std::uint32_t>::max()) {
    throw SyntaxError(lines[2].number, lines[2].tokens[1].column, "message count out of range");
  }
  const std::uint64_t length = to_number(lines[3], lines[3].tokens[1]);
  if (lines.size() - 4 != length) {
    throw SyntaxError(lines[3].number, lines[3].tokens[1].column,
                      "length " + std::to_string(length) + " but " +
                          std::to_string(lines.size() - 4) + " row(s) follow");
  }

  RowMatrix mat(field, 0, m);
  for (std::size_t i = 4; i < lines.size(); ++i) {
    const Line& line = lines[i];
    expect_keyword(line, "row", SIZE_MAX);
    if (line.tokens.size() < 2) throw SyntaxError(line.number, line.tokens[0].column, "row needs 'sparse' or 'dense'");
    std::vector<Element> row(m, 0);
    const std::string& kind = line.tokens[1].text;
    if (kind == "dense") {
      if (line.tokens.size() - 2 != m) {
        throw SyntaxError(line.number, line.tokens[1].column,
                          "dense row needs " + std::to_string(m) + " coefficients");
      }
      for (std::size_t k = 2; k < line.tokens.size(); ++k) {
        const std::uint64_t c = to_number(line, line.tokens[k]);
        if (c >= p) throw SyntaxError(line.number, line.tokens[k].column, "coefficient not below p");
        row[k - 2] = static_cast<Element>(c);
      }
    } else if (kind == "sparse") {
      for (std::size_t k = 2; k < line.tokens.size(); ++k) {
        const std::uint64_t v = to_number(line, line.tokens[k]);
        if (v < 1 || v > m) throw SyntaxError(line.number, line.tokens[k].column, "support vertex outside [1..m]");
        if (row[v - 1] != 0) throw SyntaxError(line.number, line.tokens[k].column, "repeated support vertex");
        row[v - 1] = 1;
      }
    } else {
      throw SyntaxError(line.number, line.tokens[1].column, "row kind must be 'sparse' or 'dense'");
    }
    mat.append_row(row);
  }
  return Scheme(std::move(mat));
}

Scheme parse_scheme_text(const std::string& text) {
  std::istringstream in(text);
  return parse_scheme(in);
}

Scheme read_scheme(const std::filesystem::path& path) { return parse_scheme_text(read_file(path)); }

std::string serialize_scheme(const Scheme& scheme) {
  const RowMatrix& mat = scheme.matrix();
  std::ostringstream out;
  out << "picod-scheme 1\n";
  out << "field " << scheme.field().value() << "\n";
  out << "messages " << mat.cols() << "\n";
  out << "length " << mat.rows() << "\n";
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    const auto row = mat.row(r);
    const bool sparse = std::all_of(row.begin(), row.end(), [](Element c) { return c <= 1; });
    out << "row " << (sparse ? "sparse" : "dense");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!sparse) out << ' ' << row[c];
      else if (row[c] == 1) out << ' ' << c + 1;
    }
    out << '\n';
  }
  return out.str();
}

void write_scheme(const Scheme& scheme, const std::filesystem::path& path) {
  write_file(path, serialize_scheme(scheme));
}

std::string digest(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string instance_digest(const Instance& inst) { return digest(serialize_instance(inst)); }

namespace {

using nlohmann::json;

json nested_to_json(const Instance& inst, const NestedCollection& c) {
  json levels = json::array();
  for (const auto& level : c.levels) {
    json edges = json::array();
    for (std::size_t client : level) edges.push_back(inst.request(client));
    levels.push_back(std::move(edges));
  }
  return {{"levels", std::move(levels)}};
}

json tree_to_json(const Instance& inst, const NestingTree& tree) {
  json nodes = json::array();
  for (const auto& node : tree.nodes) {
    json entry = {{"request", inst.request(node.client)}};
    entry["first_child"] = node.first_child ? json(*node.first_child) : json(nullptr);
    nodes.push_back(std::move(entry));
  }
  return {{"nodes", std::move(nodes)}};
}

json refutation_to_json(const Instance& inst, const Length1Refutation& r) {
  json nodes = json::array();
  for (const auto& node : r.nodes) {
    json branches = json::array();
    for (const auto& b : node.branches) {
      json entry = {{"vertex", b.vertex}};
      if (b.conflict) entry["conflict"] = inst.request(*b.conflict);
      else entry["child"] = *b.child;
      branches.push_back(std::move(entry));
    }
    nodes.push_back({{"client", inst.request(node.client)}, {"branches", std::move(branches)}});
  }
  return {{"nodes", std::move(nodes)}};
}

json mais_proof_to_json(const Instance& inst, const MaisProof& proof) {
  json nodes = json::array();
  for (const auto& node : proof.nodes) {
    if (node.chain) {
      json clients = json::array();
      for (std::size_t c : node.chain->clients) clients.push_back(inst.request(c));
      nodes.push_back({{"chain", {{"clients", std::move(clients)}, {"demands", node.chain->demands}}}});
    } else {
      nodes.push_back({{"children", node.children}});
    }
  }
  return {{"bound", proof.bound}, {"nodes", std::move(nodes)}};
}

template <typename T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

std::size_t client_of(const Instance& inst, const json& request) {
  auto found = inst.find_client(request.get<VertexSet>());
  if (!found) throw std::runtime_error("witness names a request-set that is not a client");
  return *found;
}

}  // namespace

json certificate_to_json(const Instance& inst, const BoundCertificate& cert) {
  json lower = {{"value", cert.lower}, {"kind", to_string(cert.lower_kind)}};
  switch (cert.lower_kind) {
    case LowerKind::nesting_strict: lower["witness"] = nested_to_json(inst, *cert.nesting); break;
    case LowerKind::nesting_relaxed: lower["witness"] = tree_to_json(inst, *cert.nesting_tree); break;
    case LowerKind::length1_refutation:
      lower["witness"] = refutation_to_json(inst, *cert.length1_refutation);
      break;
    case LowerKind::mais: lower["witness"] = mais_proof_to_json(inst, *cert.mais_proof); break;
    case LowerKind::trivial: lower["witness"] = json::object(); break;
  }
  const std::string scheme_text = serialize_scheme(cert.upper_scheme);
  return {
      {"format", "picod-certificate"},
      {"version", 1},
      {"tool", kToolVersion},
      {"instance",
       {{"digest", instance_digest(inst)},
        {"messages", inst.message_count()},
        {"clients", inst.client_count()}}},
      {"lower", std::move(lower)},
      {"upper",
       {{"value", cert.upper},
        {"source", cert.upper_source},
        {"scheme", scheme_text},
        {"scheme_digest", digest(scheme_text)}}},
      {"tight", cert.tight},
      {"summary",
       {{"max_degree", cert.max_degree},
        {"nesting_strict", cert.nesting_strict},
        {"nesting_strict_exact", cert.nesting_strict_exact},
        {"nesting_relaxed", cert.nesting_relaxed},
        {"mais_min", optional_json(cert.mais_min)},
        {"length1", optional_json(cert.length1)},
        {"algorithm1", optional_json(cert.algorithm1_length)},
        {"grcov", optional_json(cert.grcov_length)},
        {"cover", optional_json(cert.cover_length)},
        {"oracle", optional_json(cert.oracle_length)}}},
  };
}

CheckResult check_certificate(const Instance& inst, const json& cert) {
  CheckResult result;
  auto fail = [&](std::string problem) {
    result.ok = false;
    result.problems.push_back(std::move(problem));
  };

  try {
    if (cert.at("format") != "picod-certificate" || cert.at("version") != 1) {
      fail("not a version 1 picod certificate");
      return result;
    }
    if (cert.at("instance").at("digest") != instance_digest(inst)) {
      fail("instance digest does not match");
    }

    const json& upper = cert.at("upper");
    const auto upper_value = upper.at("value").get<std::size_t>();
    const auto scheme_text = upper.at("scheme").get<std::string>();
    if (upper.at("scheme_digest") != digest(scheme_text)) fail("scheme digest does not match");
    const Scheme scheme = parse_scheme_text(scheme_text);
    if (scheme.length() != upper_value) fail("upper bound differs from the scheme length");
    if (scheme.message_count() != inst.message_count()) {
      fail("scheme width differs from the message count");
    } else if (!verify(inst, scheme).all_satisfied) {
      fail("embedded scheme leaves clients unsatisfied");
    }

    const json& lower = cert.at("lower");
    const auto lower_value = lower.at("value").get<std::size_t>();
    const auto kind = lower.at("kind").get<std::string>();
    const json& witness = lower.at("witness");
    if (kind == to_string(LowerKind::nesting_strict)) {
      NestedCollection c;
      for (const auto& level : witness.at("levels")) {
        c.levels.emplace_back();
        for (const auto& request : level) c.levels.back().push_back(client_of(inst, request));
      }
      if (auto problem = check_nested_collection(inst, c)) fail("nested collection: " + *problem);
      if (c.length() != lower_value) fail("nested collection length differs from the lower bound");
    } else if (kind == to_string(LowerKind::nesting_relaxed)) {
      NestingTree tree;
      for (const auto& node : witness.at("nodes")) {
        NestingTree::Node nd{client_of(inst, node.at("request")), std::nullopt};
        if (!node.at("first_child").is_null()) nd.first_child = node.at("first_child").get<std::size_t>();
        tree.nodes.push_back(nd);
      }
      if (auto problem = check_nesting_tree(inst, tree)) fail("nesting tree: " + *problem);
      if (tree.depth() != lower_value) fail("nesting tree depth differs from the lower bound");
    } else if (kind == to_string(LowerKind::length1_refutation)) {
      Length1Refutation r;
      for (const auto& node : witness.at("nodes")) {
        Length1Refutation::Node nd{client_of(inst, node.at("client")), {}};
        for (const auto& b : node.at("branches")) {
          Length1Refutation::Branch branch{b.at("vertex").get<Vertex>(), std::nullopt, std::nullopt};
          if (b.contains("conflict")) branch.conflict = client_of(inst, b.at("conflict"));
          if (b.contains("child")) branch.child = b.at("child").get<std::size_t>();
          nd.branches.push_back(branch);
        }
        r.nodes.push_back(std::move(nd));
      }
      if (lower_value != 2) fail("length-1 refutation certifies exactly 2");
      if (auto problem = check_length1_refutation(inst, r)) fail("length-1 refutation: " + *problem);
    } else if (kind == to_string(LowerKind::mais)) {
      MaisProof proof;
      proof.bound = witness.at("bound").get<std::size_t>();
      for (const auto& node : witness.at("nodes")) {
        MaisProof::Node nd;
        if (node.contains("chain")) {
          ChainWitness chain;
          for (const auto& c : node.at("chain").at("clients")) chain.clients.push_back(client_of(inst, c));
          chain.demands = node.at("chain").at("demands").get<std::vector<Vertex>>();
          nd.chain = std::move(chain);
        }
        if (node.contains("children")) nd.children = node.at("children").get<std::vector<std::size_t>>();
        proof.nodes.push_back(std::move(nd));
      }
      if (auto problem = check_mais_proof(inst, proof)) fail("MAIS proof: " + *problem);
      if (proof.bound != lower_value) fail("MAIS proof bound differs from the lower bound");
    } else if (kind == to_string(LowerKind::trivial)) {
      if (lower_value > (inst.is_empty() ? 0u : 1u)) fail("trivial lower bound too large");
    } else {
      fail("unknown lower bound kind '" + kind + "'");
    }

    if (lower_value > upper_value) fail("lower bound exceeds upper bound");
    if (cert.at("tight").get<bool>() != (lower_value == upper_value)) fail("tight flag is wrong");
  } catch (const std::exception& e) {
    fail(std::string("malformed certificate: ") + e.what());
  }
  return result;
}

json trace_to_json(const Algorithm1Result& result) {
  json rounds = json::array();
  for (const auto& round : result.trace.rounds) {
    json decrements = json::array();
    for (const auto& [v, d] : round.degree_decrements) decrements.push_back({v, d});
    rounds.push_back({{"delta", round.delta},
                      {"color", optional_json(round.color)},
                      {"picked", round.picked},
                      {"removed_clients", round.removed_clients},
                      {"degree_decrements", std::move(decrements)}});
  }
  return {{"rounds", std::move(rounds)},
          {"transmissions", result.trace.transmissions},
          {"color_of", result.coloring.color_of}};
}

json report_to_json(const Instance& inst, const SatisfactionReport& report) {
  json clients = json::array();
  for (std::size_t i = 0; i < report.clients.size(); ++i) {
    const auto& c = report.clients[i];
    json entry = {{"request", inst.request(i)}, {"satisfied", c.satisfied}};
    if (c.satisfied) {
      entry["decoded"] = c.decoded;
      entry["coefficients"] = c.coefficients;
    }
    clients.push_back(std::move(entry));
  }
  return {{"all_satisfied", report.all_satisfied}, {"clients", std::move(clients)}};
}

json cross_check_to_json(const CrossCheckReport& report) {
  return {{"max_degree", report.max_degree},
          {"nesting_strict", report.nesting_strict},
          {"nesting_relaxed", report.nesting_relaxed},
          {"mais_min", optional_json(report.mais_min)},
          {"linear_optimum", optional_json(report.linear_optimum)},
          {"cover_optimum", optional_json(report.cover_optimum)},
          {"algorithm1_length", report.algorithm1_length},
          {"length1", optional_json(report.length1)},
          {"violations", report.violations},
          {"notes", report.notes},
          {"ok", report.ok()}};
}

}  // namespace picod::io
