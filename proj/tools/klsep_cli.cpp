// klsep: command-line driver for the Coxeter group / Kazhdan-Lusztig /
// separation / Bott-Samelson / torsion computations.
//
// Exit codes: 0 ok, 2 bad configuration or input, 3 unsupported spec,
// 4 internal invariant violation.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "klsep/bott_samelson.hpp"
#include "klsep/coxeter.hpp"
#include "klsep/error.hpp"
#include "klsep/kl_table.hpp"
#include "klsep/permutation.hpp"
#include "klsep/propagate.hpp"
#include "klsep/roots.hpp"
#include "klsep/separation.hpp"
#include "klsep/torsion.hpp"
#include "klsep/version.hpp"
#include "klsep/wgraph.hpp"
#include "klsep/worked_examples.hpp"

namespace fs = std::filesystem;
using namespace klsep;

namespace {

constexpr int kExitBadConfig = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitInvariant = 4;

struct BadConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecOptions {
  std::string family = "A";
  int rank = 0;
  int m = 0;

  void add_to(CLI::App* app) {
    app->add_option("--family", family, "A, B, D, F4, G2 or I2")->required();
    app->add_option("--rank", rank, "rank (implied for F4, G2, I2)");
    app->add_option("--m", m, "order of st for I2");
  }

  CoxeterSpec resolve() const {
    auto f = parse_family(family);
    if (!f) throw BadConfig("unknown family '" + family + "'");
    CoxeterSpec spec{*f, rank, m};
    if (*f == Family::F4) spec.rank = rank ? rank : 4;
    if (*f == Family::G2 || *f == Family::I2) spec.rank = rank ? rank : 2;
    if (*f != Family::I2 && m != 0) throw BadConfig("--m only applies to I2");
    if (*f != Family::F4 && *f != Family::G2 && *f != Family::I2 && rank == 0)
      throw BadConfig("--rank is required for family " + family);
    spec.validate();
    return spec;
  }
};

struct Globals {
  unsigned threads = 1;
  std::string output;
  std::string cache;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw BadConfig("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

/// Element from a letter word or, in type A, one-line notation.
Element parse_element(const GroupTable& g, const std::string& text, const std::string& notation) {
  std::optional<Element> as_word = g.parse_word(text);
  std::optional<Element> as_oneline;
  const bool all_digits =
      !text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (g.spec().family == Family::A && all_digits) {
    auto digits = digits_of(text);
    if (static_cast<int>(digits.size()) == g.rank() + 1 && is_permutation_of(digits, g.rank() + 1))
      as_oneline = parse_one_line(g, std::span<const int>(digits));
  }
  if (notation == "word") {
    if (!as_word) throw BadConfig("'" + text + "' is not a word in " + g.spec().letters());
    return *as_word;
  }
  if (notation == "oneline") {
    if (!as_oneline) throw BadConfig("'" + text + "' is not one-line notation for " + g.spec().name());
    return *as_oneline;
  }
  if (as_word && as_oneline && *as_word != *as_oneline)
    throw BadConfig("'" + text + "' parses both as a word and in one-line notation; pass --notation");
  if (as_word) return *as_word;
  if (as_oneline) return *as_oneline;
  throw BadConfig("cannot parse element '" + text + "' for " + g.spec().name());
}

Word parse_word_list(const GroupTable& g, const std::string& text) {
  Word out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.size() == 1 && g.spec().generator_of(item[0]) && !std::isdigit(static_cast<unsigned char>(item[0]))) {
      out.push_back(*g.spec().generator_of(item[0]));
      continue;
    }
    int k = 0;
    try {
      k = std::stoi(item);
    } catch (const std::exception&) {
      throw BadConfig("bad word entry '" + item + "'");
    }
    if (k < 1 || k > g.rank()) throw BadConfig("generator index out of range: " + item);
    out.push_back(k - 1);
  }
  if (out.empty()) throw BadConfig("empty --word");
  return out;
}

/// KL table, optionally persisted as KLT1 under the cache directory.
struct KLSource {
  KLTable table;
  std::string provenance;  // empty unless --cache was given
};

KLSource load_or_compute(const GroupTable& g, const Globals& globals) {
  KLOptions opts;
  opts.threads = globals.threads;
  if (globals.cache.empty()) return {kl_basis(g, opts), ""};
  fs::create_directories(globals.cache);
  const fs::path file = fs::path(globals.cache) / (g.spec().name() + ".klt");
  if (fs::exists(file)) {
    std::ifstream in(file);
    return {read_klt(in, g), "loaded from " + file.string()};
  }
  KLTable t = kl_basis(g, opts);
  std::ofstream out(file);
  write_klt(out, t);
  if (!out) throw BadConfig("cannot write cache file " + file.string());
  return {std::move(t), "computed and saved to " + file.string()};
}

std::string poly_string(const KLPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!out.empty()) out += " + ";
    const bool show_coeff = p[i] != 1 || i == 0;
    out += show_coeff ? std::to_string(p[i]) : "";
    if (i == 1) out += "q";
    if (i > 1) out += "q^" + std::to_string(i);
  }
  return out;
}

// ---- subcommands ----------------------------------------------------------

int run_group(const CoxeterSpec& spec, bool list, Output& out) {
  auto g = build_group(spec);
  auto& os = out.stream();
  os << "group " << spec.name() << "\n";
  os << "letters: " << spec.letters() << "\n";
  os << "order " << g.order() << "\n";
  os << "longest element " << g.format(g.longest()) << " (length " << g.length(g.longest()) << ")\n";
  std::vector<std::size_t> by_length(static_cast<std::size_t>(g.length(g.longest())) + 1);
  for (Element w = 0; w < g.order(); ++w) ++by_length[static_cast<std::size_t>(g.length(w))];
  os << "elements by length:";
  for (auto c : by_length) os << ' ' << c;
  os << "\n";
  if (list)
    for (Element w = 0; w < g.order(); ++w) {
      os << w << ' ' << g.format(w);
      if (spec.family == Family::A) os << ' ' << one_line_string(g, w);
      os << "\n";
    }
  return 0;
}

struct KLBasisArgs {
  std::string element, x, w, notation = "auto";
  bool mu = false;
};

int run_klbasis(const CoxeterSpec& spec, const KLBasisArgs& a, const Globals& globals, Output& out) {
  auto g = build_group(spec);
  auto src = load_or_compute(g, globals);
  const KLTable& t = src.table;
  auto& os = out.stream();
  bool printed = false;
  if (!src.provenance.empty()) os << "# KL table " << src.provenance << "\n";
  if (!a.element.empty()) {
    os << t.kl_element(parse_element(g, a.element, a.notation)).to_string(g) << "\n";
    printed = true;
  }
  if (!a.x.empty() || !a.w.empty()) {
    if (a.x.empty() || a.w.empty()) throw BadConfig("--x and --w go together");
    Element x = parse_element(g, a.x, a.notation), w = parse_element(g, a.w, a.notation);
    os << "P_{" << g.format(x) << "," << g.format(w) << "} = " << poly_string(t.kl_poly(x, w)) << "\n";
    os << "h_{" << g.format(x) << "," << g.format(w) << "} = " << t.h_coefficient(x, w).to_string() << "\n";
    os << "mu = " << t.mu(x, w) << "\n";
    printed = true;
  }
  if (a.mu) {
    for (Element w = 0; w < g.order(); ++w)
      for (const auto& e : t.lower_mu(w)) os << g.format(e.x) << ' ' << g.format(w) << ' ' << e.mu << "\n";
    printed = true;
  }
  if (!printed) {
    os << "group " << spec.name() << ", order " << g.order() << "\n";
    os << "extremal pairs " << t.extremal_pairs() << "\n";
    os << "distinct polynomials " << t.distinct_polys() << "\n";
    os << "mu edges " << t.mu_edges() << "\n";
  }
  return 0;
}

int run_wgraph(const std::optional<CoxeterSpec>& spec, const std::string& ingest, const Globals& globals,
               Output& out) {
  if (!ingest.empty()) {
    std::ifstream in(ingest);
    if (!in) throw BadConfig("cannot read " + ingest);
    WGraph graph = parse_wg1(in);
    auto g = build_group(graph.spec());
    check_against_group(graph, g);
    out.stream() << "W-graph " << graph.spec().name() << ": " << graph.vertices().size() << " vertices, "
                 << graph.edges().size() << " edges\n";
    return 0;
  }
  if (!spec) throw BadConfig("wgraph needs --family/--rank or --ingest");
  auto g = build_group(*spec);
  auto src = load_or_compute(g, globals);
  write_wg1(out.stream(), build_wgraph(g, src.table));
  return 0;
}

struct SigmaArgs {
  std::string from_wgraph;
  std::string format = "text";
  bool fw = false;
};

int run_sigma(const std::optional<CoxeterSpec>& spec, const SigmaArgs& a, const Globals& globals, Output& out) {
  std::optional<GroupTable> g;
  WGraph graph;
  std::string provenance;
  if (!a.from_wgraph.empty()) {
    std::ifstream in(a.from_wgraph);
    if (!in) throw BadConfig("cannot read " + a.from_wgraph);
    graph = parse_wg1(in);
    if (spec && !(*spec == graph.spec()))
      throw ParseError(ParseErrorKind::SpecMismatch, spec->name() + " vs " + graph.spec().name());
    g.emplace(build_group(graph.spec()));
    check_against_group(graph, *g);
  } else {
    if (!spec) throw BadConfig("sigma needs --family/--rank or --from-wgraph");
    g.emplace(build_group(*spec));
    auto src = load_or_compute(*g, globals);
    provenance = src.provenance;
    graph = build_wgraph(*g, src.table);
  }
  const FWTable f = compute_fw(*g, graph, globals.threads);
  const SigmaReport r = sigma(*g, f, a.fw);
  auto& os = out.stream();
  if (a.format == "json") {
    auto j = to_json(r);
    if (!provenance.empty()) j["cache"] = provenance;
    os << j.dump(2) << "\n";
  } else {
    if (!provenance.empty()) os << "# KL table " << provenance << "\n";
    write_text(os, r);
  }
  return 0;
}

int run_propagate(const CoxeterSpec& spec, const std::string& assumptions_file, bool all, const Globals& globals,
                  Output& out) {
  auto g = build_group(spec);
  auto src = load_or_compute(g, globals);
  const WGraph graph = build_wgraph(g, src.table);
  const FWTable f = compute_fw(g, graph, globals.threads);

  std::map<Element, CharStatus> assumptions;
  if (!assumptions_file.empty()) {
    std::ifstream in(assumptions_file);
    if (!in) throw BadConfig("cannot read " + assumptions_file);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string kind, word, extra;
      if (!(ls >> kind)) continue;
      if (!(ls >> word) || (ls >> extra) || (kind != "eq" && kind != "neq"))
        throw BadConfig(assumptions_file + ":" + std::to_string(lineno) + ": expected 'eq <word>' or 'neq <word>'");
      const Element x = parse_element(g, word, "auto");
      const CharStatus c = kind == "eq" ? CharStatus::CharEq : CharStatus::CharNeq;
      auto [it, inserted] = assumptions.emplace(x, c);
      if (!inserted && it->second != c) throw BadConfig("element " + word + " assumed both eq and neq");
    }
  }

  const auto r = propagate(g, graph, f, assumptions);
  auto& os = out.stream();
  if (!src.provenance.empty()) os << "# KL table " << src.provenance << "\n";
  os << "group " << spec.name() << ", order " << g.order() << ", " << r.implications.size() << " implications\n";
  std::size_t eq = 0, neq = 0;
  for (auto c : r.status) {
    eq += c == CharStatus::CharEq;
    neq += c == CharStatus::CharNeq;
  }
  os << "eq " << eq << ", neq " << neq << ", unknown " << g.order() - eq - neq << "\n";
  for (Element x = 0; x < g.order(); ++x)
    if (all || !f.separated(x)) os << g.format(x) << ' ' << to_string(r.status[x]) << "\n";
  if (!r.contradictions.empty()) {
    os << "contradictions:";
    for (Element x : r.contradictions) os << ' ' << g.format(x);
    os << "\n";
    return kExitInvariant;
  }
  return 0;
}

struct FiberArgs {
  std::string word, target, notation = "auto", format = "text", positions;
  bool dims = false, weights = false;
};

int run_fiber(const CoxeterSpec& spec, const FiberArgs& a, Output& out) {
  auto g = build_group(spec);
  const Word word = parse_word_list(g, a.word);
  const Element y = parse_element(g, a.target, a.notation);
  std::vector<int> positions;
  if (!a.positions.empty()) {
    std::stringstream ss(a.positions);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int p = 0;
      try {
        p = std::stoi(item);
      } catch (const std::exception&) {
        throw BadConfig("bad position '" + item + "'");
      }
      if (p < 1 || p > static_cast<int>(word.size())) throw BadConfig("position out of range: " + item);
      positions.push_back(p);
    }
  } else {
    for (int p = 1; p <= static_cast<int>(word.size()); ++p) positions.push_back(p);
  }
  const auto masks = fiber_fixed_points(g, word, y);
  const auto names = simple_root_names(spec);
  const bool csv = a.format == "csv";
  auto& os = out.stream();
  if (!csv) os << "fiber over " << g.format(y) << ": " << masks.size() << " fixed points\n";
  std::vector<std::string> header{"mask"};
  if (a.dims) header.insert(header.end(), {"total_dim", "fiber_dim"});
  if (a.weights)
    for (int p : positions) header.push_back("weight_" + std::to_string(p));
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? (csv ? "," : " ") : "") << header[i];
  os << "\n";
  for (const auto& m : masks) {
    std::vector<std::string> row{m.to_string()};
    if (a.dims) {
      const CellDims d = bb_cell_dim(g, word, m);
      if (!(d == bb_cell_dim_roots(g, word, m))) throw InvariantViolation("cell dimension formulas disagree");
      row.push_back(std::to_string(d.total));
      row.push_back(std::to_string(d.fiber));
    }
    if (a.weights)
      for (int p : positions) row.push_back(normal_line_weight(g, word, m, p).to_string(names));
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? (csv ? "," : " ") : "") << row[i];
    os << "\n";
  }
  return 0;
}

int run_torsion(const std::string& example, Output& out) {
  if (example != "d4") throw BadConfig("unknown torsion example '" + example + "' (available: d4)");
  auto g = build_group(CoxeterSpec::D(4));
  const auto comp = examples::euler_class_d4(g);
  const auto root_names = simple_root_names(g.spec());
  const auto names = default_factor_names(3);
  auto& os = out.stream();
  os << "D4, word s,u,v,t,s,u,v over suv: " << comp.masks.size() << " fixed points\n";
  os << "restrictions of e_T(L):\n";
  for (std::size_t e = 0; e < comp.masks.size(); ++e)
    os << "  " << comp.masks[e].to_string() << "  " << comp.restrictions[e].to_string(root_names) << "\n";
  os << "euler class: " << comp.euler_class.to_string(names) << "\n";
  const IntMatrix m = mult_matrix(comp.euler_class, 2, 3, names);
  os << "multiplication H^2 -> H^4, rows";
  for (const auto& l : m.row_labels) os << ' ' << l;
  os << ", columns";
  for (const auto& l : m.col_labels) os << ' ' << l;
  os << ":\n  " << m.to_string() << "\n";
  os << "determinant: " << determinant(m) << "\n";
  const SmithForm snf = smith_normal_form(m);
  os << "smith invariants:";
  for (const auto& d : snf.invariants) os << ' ' << d;
  os << "\n";
  os << "verdict: " << torsion_verdict(snf.invariants) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Lusztig bases, W-graphs and separated elements of finite Coxeter groups"};
  app.set_version_flag("--version", std::string("klsep ") + kVersion);
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--threads", globals.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--output,-o", globals.output, "write the report to this file");
  app.add_option("--cache", globals.cache, "directory for KLT1 dumps of KL tables");

  SpecOptions spec_opts;
  auto* group = app.add_subcommand("group", "enumerate a group and print statistics");
  bool list = false;
  spec_opts.add_to(group);
  group->add_flag("--list", list, "list every element");

  SpecOptions kl_spec;
  KLBasisArgs kl_args;
  auto* klbasis = app.add_subcommand("klbasis", "Kazhdan-Lusztig basis elements, polynomials and mu");
  kl_spec.add_to(klbasis);
  klbasis->add_option("--element", kl_args.element, "print h_w in the standard basis");
  klbasis->add_option("--x", kl_args.x, "with --w: print P_{x,w}, h_{x,w} and mu(x,w)");
  klbasis->add_option("--w", kl_args.w);
  klbasis->add_flag("--mu", kl_args.mu, "list all pairs with mu != 0");
  klbasis->add_option("--notation", kl_args.notation)->check(CLI::IsMember({"auto", "word", "oneline"}));

  SpecOptions wg_spec;
  std::string ingest;
  auto* wgraph = app.add_subcommand("wgraph", "emit a W-graph in WG1 format, or check one");
  wgraph->add_option("--family", wg_spec.family);
  wgraph->add_option("--rank", wg_spec.rank);
  wgraph->add_option("--m", wg_spec.m);
  wgraph->add_option("--ingest", ingest, "parse and validate a WG1 file");

  SpecOptions sg_spec;
  SigmaArgs sg_args;
  auto* sigma_cmd = app.add_subcommand("sigma", "f_W and the separated elements");
  sigma_cmd->add_option("--family", sg_spec.family);
  sigma_cmd->add_option("--rank", sg_spec.rank);
  sigma_cmd->add_option("--m", sg_spec.m);
  sigma_cmd->add_option("--from-wgraph", sg_args.from_wgraph, "read the W-graph from a WG1 file");
  sigma_cmd->add_option("--format", sg_args.format)->check(CLI::IsMember({"text", "json"}));
  sigma_cmd->add_flag("--fw", sg_args.fw, "include the full f_W table");

  SpecOptions pr_spec;
  std::string assumptions_file;
  bool all = false;
  auto* propagate_cmd = app.add_subcommand("propagate", "propagate ch(E(x)) = h_x facts through the W-graph");
  pr_spec.add_to(propagate_cmd);
  propagate_cmd->add_option("--assumptions", assumptions_file, "lines 'eq <word>' or 'neq <word>'");
  propagate_cmd->add_flag("--all", all, "print separated elements too");

  SpecOptions fb_spec;
  FiberArgs fb_args;
  auto* fiber = app.add_subcommand("fiber", "torus-fixed points of a Bott-Samelson fiber");
  fb_spec.add_to(fiber);
  fiber->add_option("--word", fb_args.word, "comma-separated generators, 1-based or letters")->required();
  fiber->add_option("--target", fb_args.target, "element: letter word or one-line notation")->required();
  fiber->add_option("--notation", fb_args.notation)->check(CLI::IsMember({"auto", "word", "oneline"}));
  fiber->add_flag("--dims", fb_args.dims, "Bialynicki-Birula cell dimensions");
  fiber->add_flag("--weights", fb_args.weights, "normal-line weights");
  fiber->add_option("--positions", fb_args.positions, "comma-separated word positions for --weights");
  fiber->add_option("--format", fb_args.format)->check(CLI::IsMember({"text", "csv"}));

  std::string example;
  auto* torsion = app.add_subcommand("torsion", "Euler class, multiplication matrix and Smith form");
  torsion->add_option("--example", example, "d4")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadConfig;
  }

  auto optional_spec = [](const SpecOptions& s, const CLI::App* cmd) -> std::optional<CoxeterSpec> {
    if (cmd->count("--family") == 0) return std::nullopt;
    return s.resolve();
  };

  try {
    Output out(globals.output);
    if (*group) return run_group(spec_opts.resolve(), list, out);
    if (*klbasis) return run_klbasis(kl_spec.resolve(), kl_args, globals, out);
    if (*wgraph) return run_wgraph(optional_spec(wg_spec, wgraph), ingest, globals, out);
    if (*sigma_cmd) return run_sigma(optional_spec(sg_spec, sigma_cmd), sg_args, globals, out);
    if (*propagate_cmd) return run_propagate(pr_spec.resolve(), assumptions_file, all, globals, out);
    if (*fiber) return run_fiber(fb_spec.resolve(), fb_args, out);
    if (*torsion) return run_torsion(example, out);
  } catch (const UnsupportedSpec& e) {
    std::cerr << "klsep: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const NoRootDatum& e) {
    std::cerr << "klsep: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const InvariantViolation& e) {
    std::cerr << "klsep: invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const ParseError& e) {
    std::cerr << "klsep: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const BadConfig& e) {
    std::cerr << "klsep: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "klsep: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "klsep: " << e.what() << "\n";
    return kExitBadConfig;
  }
  return kExitBadConfig;
}
