// Command-line front end: build fixture graphs, run the symmetry checks,
// emit decompositions, spectra and band structures as text or CSV.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage/input error.

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "spectral_layers/automorphisms.hpp"
#include "spectral_layers/decomposition.hpp"
#include "spectral_layers/fixtures.hpp"
#include "spectral_layers/jacobi.hpp"
#include "spectral_layers/lgf.hpp"
#include "spectral_layers/path_analysis.hpp"

using namespace spectral_layers;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty list entry");
    out.push_back(std::stod(item));
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
}

// ---- graph sources -------------------------------------------------------

struct GraphSource {
  std::string fixture;
  std::string antitree_spec;
  std::string tree_spec;  // "k-spec|gamma-spec"
  std::string lgf_path;
  int depth = -1;
  int ray_length = 3;

  bool is_generator() const { return !antitree_spec.empty() || !tree_spec.empty(); }
};

void add_graph_options(CLI::App* cmd, GraphSource& src, bool depth_used = true) {
  auto* fixture = cmd->add_option("--fixture", src.fixture,
                                  "builtin fixture (fig3a fig3b fig4a fig4b fig5)")
                      ->check(CLI::IsMember(fixture_names()));
  auto* antitree =
      cmd->add_option("--antitree", src.antitree_spec,
                      "antitree sphere sizes, \"prefix;tail\" (e.g. \"1;2,3\")");
  auto* tree = cmd->add_option(
      "--tree-cs", src.tree_spec,
      "tree with complete spheres, \"k-spec|gamma-spec\" (e.g. \"2|1\")");
  auto* lgf = cmd->add_option("--lgf", src.lgf_path, "path to an LGF file");
  fixture->excludes(antitree)->excludes(tree)->excludes(lgf);
  antitree->excludes(tree)->excludes(lgf);
  tree->excludes(lgf);
  if (depth_used)
    cmd->add_option("--depth", src.depth, "ball radius for generator specs");
  cmd->add_option("--ray-length", src.ray_length,
                  "extra ray spheres on figure fixtures (default 3)")
      ->check(CLI::NonNegativeNumber);
}

std::pair<SequenceSpec, SequenceSpec> split_tree_spec(const std::string& text) {
  std::size_t bar = text.find('|');
  if (bar == std::string::npos)
    throw std::invalid_argument("tree spec needs the form \"k-spec|gamma-spec\"");
  return {SequenceSpec::parse(text.substr(0, bar)),
          SequenceSpec::parse(text.substr(bar + 1))};
}

LayeredGraph load_graph(const GraphSource& src) {
  if (!src.fixture.empty()) return fixture_by_name(src.fixture, src.ray_length);
  if (!src.antitree_spec.empty()) {
    if (src.depth < 0) throw std::invalid_argument("--antitree needs --depth");
    return build_antitree(SequenceSpec::parse(src.antitree_spec), src.depth);
  }
  if (!src.tree_spec.empty()) {
    if (src.depth < 0) throw std::invalid_argument("--tree-cs needs --depth");
    auto [k, gamma] = split_tree_spec(src.tree_spec);
    return build_tree_complete_spheres(k, gamma, src.depth);
  }
  if (!src.lgf_path.empty()) {
    std::ifstream in(src.lgf_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + src.lgf_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_lgf(text.str());
  }
  throw std::invalid_argument(
      "no graph source given (--fixture, --antitree, --tree-cs or --lgf)");
}

// ---- report rendering ----------------------------------------------------

const char* equality_name(PathEquality eq) {
  switch (eq) {
    case PathEquality::fb_vs_bf: return "fb-vs-bf";
    case PathEquality::tailed_vs_headed_forward: return "tailed-vs-headed-f";
    case PathEquality::tailed_vs_headed_backward: return "tailed-vs-headed-b";
  }
  return "?";
}

std::string render_path_report(const PathCommutingReport& r, bool strong,
                               const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    out << "n,equality,k,l,x_sphere,x_index,y_sphere,y_index,lhs,rhs\n";
    for (const PathViolation& v : r.violations)
      out << v.n << ',' << equality_name(v.equality) << ',' << v.k << ',' << v.l
          << ',' << v.x.sphere << ',' << v.x.index << ',' << v.y.sphere << ','
          << v.y.index << ',' << v.lhs << ',' << v.rhs << '\n';
    for (const DegreeViolation& d : r.degree_violations)
      out << d.n << ",degree,0,0," << d.x.sphere << ',' << d.x.index << ','
          << d.y.sphere << ',' << d.y.index << ',' << d.deg_x << ',' << d.deg_y
          << '\n';
    return out.str();
  }
  out << "check: " << (strong ? "strong-path-commuting" : "path-commuting") << '\n';
  out << "tested: n_max=" << r.tested_n_max << " k_max=" << r.tested_k_max << '\n';
  for (const std::string& w : r.warnings) out << "warning: " << w << '\n';
  const std::size_t limit = 20;
  for (std::size_t i = 0; i < std::min(r.violations.size(), limit); ++i) {
    const PathViolation& v = r.violations[i];
    out << "violation: sphere " << v.n << ' ' << equality_name(v.equality) << "("
        << v.k << ',' << v.l << ") x=" << to_string(v.x) << " y=" << to_string(v.y)
        << ": " << v.lhs << " vs " << v.rhs << '\n';
  }
  if (r.violations.size() > limit)
    out << "... and " << r.violations.size() - limit << " more violations\n";
  for (const DegreeViolation& d : r.degree_violations)
    out << "degree violation: sphere " << d.n << ": deg" << to_string(d.x) << '='
        << d.deg_x << " deg" << to_string(d.y) << '=' << d.deg_y << '\n';
  out << "verdict: " << (r.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string render_family_report(const FamilyPreservingReport& r,
                                 const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    out << "condition,x_sphere,x_index,y_sphere,y_index\n";
    for (const FamilyPreservingCounterexample& c : r.counterexamples)
      out << c.condition << ',' << c.x.sphere << ',' << c.x.index << ','
          << c.y.sphere << ',' << c.y.index << '\n';
    return out.str();
  }
  out << "check: family-preserving (certificate at depth " << r.depth << ")\n";
  out << "condition i (forward brothers): " << (r.pass_i ? "PASS" : "FAIL") << '\n';
  out << "condition ii (backward brothers): " << (r.pass_ii ? "PASS" : "FAIL") << '\n';
  out << "condition iii (neighbors): " << (r.pass_iii ? "PASS" : "FAIL") << '\n';
  for (const FamilyPreservingCounterexample& c : r.counterexamples)
    out << "counterexample: condition " << c.condition << " x=" << to_string(c.x)
        << " y=" << to_string(c.y) << " (no admissible automorphism)\n";
  out << "verdict: " << (r.pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string render_symmetry_report(const SphericalSymmetryReport& r,
                                   const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    out << "sphere,x_index,y_index\n";
    if (r.first_failure)
      out << r.first_failure->first.sphere << ',' << r.first_failure->first.index
          << ',' << r.first_failure->second.index << '\n';
    return out.str();
  }
  out << "check: spherical-symmetry (certificate at depth " << r.depth << ")\n";
  if (r.first_failure)
    out << "failure: no automorphism takes " << to_string(r.first_failure->first)
        << " to " << to_string(r.first_failure->second) << '\n';
  out << "verdict: " << (r.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string render_commutation_report(const CommutationReport& r,
                                      const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    out << "lhs,rhs,max_abs\n";
    for (const CommutatorEntry& e : r.entries)
      out << e.lhs << ',' << e.rhs << ',' << e.max_abs << '\n';
    return out.str();
  }
  out << "check: commuting-family at sphere " << r.n << ", j_max=" << r.j_max << '\n';
  for (const CommutatorEntry& e : r.entries)
    if (e.max_abs != 0)
      out << "nonzero commutator: [" << e.lhs << ',' << e.rhs
          << "] max-norm " << e.max_abs << '\n';
  out << "verdict: " << (r.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

// ---- subcommands ---------------------------------------------------------

int run_build(const GraphSource& src, const std::string& out_path) {
  write_output(out_path, serialize_lgf(load_graph(src)));
  return kExitPass;
}

int run_verify(const GraphSource& src, const std::string& check, int n_max,
               int k_max, int sphere, int j_max, const std::string& format,
               const std::string& out_path) {
  LayeredGraph g = load_graph(src);
  const int depth = g.depth();
  if (k_max < 0) k_max = std::max(1, std::min(3, depth / 2));
  if (n_max < 0) n_max = std::max(0, depth - k_max);

  bool pass = false;
  std::string report;
  if (check == "path-commuting") {
    PathCommutingReport r = check_path_commuting(g, n_max, k_max);
    pass = r.pass;
    report = render_path_report(r, false, format);
  } else if (check == "strong-path-commuting") {
    PathCommutingReport r = check_strongly_path_commuting(g, n_max, k_max);
    pass = r.pass;
    report = render_path_report(r, true, format);
  } else if (check == "family-preserving") {
    FamilyPreservingReport r =
        check_family_preserving(g, n_max >= depth ? depth - 1 : n_max);
    pass = r.pass();
    report = render_family_report(r, format);
  } else if (check == "spherical-symmetry") {
    SphericalSymmetryReport r = check_spherically_symmetric(g);
    pass = r.pass;
    report = render_symmetry_report(r, format);
  } else if (check == "commuting-family") {
    if (sphere < 0) sphere = std::max(0, std::min(1, depth - j_max));
    CommutationReport r = check_commuting_family(g, sphere, j_max);
    pass = r.pass;
    report = render_commutation_report(r, format);
  } else {
    throw std::invalid_argument("unknown check '" + check + "'");
  }
  write_output(out_path, report);
  return pass ? kExitPass : kExitCheckFailed;
}

Decomposition decompose_closed_form(const GraphSource& src, OperatorKind kind) {
  if (!src.antitree_spec.empty())
    return antitree_closed_form(SequenceSpec::parse(src.antitree_spec), src.depth,
                                kind);
  if (!src.tree_spec.empty()) {
    if (kind != OperatorKind::laplacian)
      throw std::invalid_argument(
          "the tree-with-complete-spheres closed form is laplacian only");
    auto [k, gamma] = split_tree_spec(src.tree_spec);
    return tree_cs_closed_form(k, gamma, src.depth);
  }
  throw std::invalid_argument(
      "closed-form decomposition needs --antitree or --tree-cs");
}

int run_decompose(const GraphSource& src, const std::string& kind_name,
                  const std::string& method, double tol,
                  const std::string& out_path) {
  OperatorKind kind = operator_kind_from_string(kind_name);
  std::ostringstream out;
  int exit_code = kExitPass;
  if (method == "generic") {
    out << decomposition_csv(tridiagonalize(load_graph(src), kind, tol));
  } else if (method == "closed-form") {
    out << decomposition_csv(decompose_closed_form(src, kind));
  } else if (method == "both") {
    Decomposition generic = tridiagonalize(load_graph(src), kind, tol);
    Decomposition closed = decompose_closed_form(src, kind);
    ReconcileReport r = reconcile(generic, closed, tol);
    out << "# reconcile: " << (r.pass ? "PASS" : "FAIL")
        << " max_deviation=" << fmt(r.max_deviation) << '\n';
    for (const std::string& m : r.mismatches) out << "# mismatch: " << m << '\n';
    out << decomposition_csv(closed);
    if (!r.pass) exit_code = kExitCheckFailed;
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  write_output(out_path, out.str());
  return exit_code;
}

int run_spectrum(const GraphSource& src, const std::string& kind_name,
                 std::string method, double tol, const std::string& out_path) {
  OperatorKind kind = operator_kind_from_string(kind_name);
  LayeredGraph g = load_graph(src);
  if (method.empty()) method = src.is_generator() ? "closed-form" : "generic";
  Decomposition d = method == "closed-form" ? decompose_closed_form(src, kind)
                                            : tridiagonalize(g, kind, 1e-10);

  std::vector<double> direct = spectrum_union(d, 1e-12).expanded();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(compress_operator(g, kind));

  std::ostringstream out;
  out << "index,direct_sum,compressed,abs_diff\n";
  double max_dev = 0.0;
  if (static_cast<int>(direct.size()) != es.eigenvalues().size())
    throw std::runtime_error("direct sum dimension does not match the ball");
  for (std::size_t i = 0; i < direct.size(); ++i) {
    const double dense = es.eigenvalues()[static_cast<int>(i)];
    const double diff = std::abs(direct[i] - dense);
    max_dev = std::max(max_dev, diff);
    out << i << ',' << fmt(direct[i]) << ',' << fmt(dense) << ',' << fmt(diff)
        << '\n';
  }
  out << "# max_deviation=" << fmt(max_dev) << (max_dev < tol ? " PASS" : " FAIL")
      << '\n';
  write_output(out_path, out.str());
  return max_dev < tol ? kExitPass : kExitCheckFailed;
}

int run_bands(const std::string& a_text, const std::string& b_text,
              const std::string& out_path) {
  PeriodicJacobi pj(parse_double_list(a_text), parse_double_list(b_text));
  write_output(out_path, bands_csv(bands_periodic(pj)));
  return kExitPass;
}

int run_detect(const std::string& values_text, const std::string& file,
               int max_period, int min_repeats) {
  std::vector<double> values;
  if (!values_text.empty()) {
    values = parse_double_list(values_text);
  } else if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read '" + file + "'");
    double v;
    while (in >> v) values.push_back(v);
  } else {
    throw std::invalid_argument("detect-period needs --values or --file");
  }
  auto hit = detect_eventually_periodic(values, max_period, min_repeats);
  if (hit)
    std::cout << "eventually periodic on the observed window: start N="
              << hit->first << " period q=" << hit->second << '\n';
  else
    std::cout << "no period detected (max_period=" << max_period << ")\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral decompositions of layered rooted graphs"};
  app.require_subcommand(1);

  GraphSource src;
  std::string out_path, format = "text";
  std::string check, kind_name = "laplacian", method;
  double tol = 1e-10, spectrum_tol = 1e-8;
  int n_max = -1, k_max = -1, sphere = -1, j_max = 2;
  std::string period_a, period_b, values_text, values_file;
  int max_period = 32, min_repeats = 3;

  CLI::App* build = app.add_subcommand("build", "emit a graph in LGF form");
  add_graph_options(build, src);
  build->add_option("--out", out_path, "write to a file instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "run a symmetry check");
  add_graph_options(verify, src);
  verify->add_option("--check", check,
                     "path-commuting | strong-path-commuting | family-preserving | "
                     "spherical-symmetry | commuting-family")
      ->required();
  verify->add_option("--n-max", n_max, "largest sphere tested");
  verify->add_option("--k-max", k_max, "largest path radius tested");
  verify->add_option("--sphere", sphere, "sphere for commuting-family");
  verify->add_option("--j-max", j_max, "radius bound for commuting-family");
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));
  verify->add_option("--out", out_path);

  CLI::App* decompose = app.add_subcommand("decompose", "emit jacobi blocks as CSV");
  add_graph_options(decompose, src);
  decompose->add_option("--kind", kind_name)
      ->check(CLI::IsMember({"adjacency", "laplacian", "normalized"}));
  decompose->add_option("--method", method, "generic | closed-form | both")
      ->check(CLI::IsMember({"generic", "closed-form", "both"}))
      ->required();
  decompose->add_option("--tol", tol)->check(CLI::PositiveNumber);
  decompose->add_option("--out", out_path);

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "compare the direct-sum spectrum with the compressed operator");
  add_graph_options(spectrum, src);
  spectrum->add_option("--kind", kind_name)
      ->check(CLI::IsMember({"adjacency", "laplacian", "normalized"}));
  spectrum->add_option("--method", method, "generic | closed-form");
  spectrum->add_option("--tol", spectrum_tol)->check(CLI::PositiveNumber);
  spectrum->add_option("--out", out_path);

  CLI::App* bands = app.add_subcommand("bands", "bands of a periodic jacobi operator");
  bands->add_option("--period-a", period_a, "comma list, one period of a")->required();
  bands->add_option("--period-b", period_b, "comma list, one period of b")->required();
  bands->add_option("--out", out_path);

  CLI::App* detect = app.add_subcommand("detect-period",
                                        "probe a sequence for eventual periodicity");
  detect->add_option("--values", values_text, "comma-separated values");
  detect->add_option("--file", values_file, "whitespace-separated values");
  detect->add_option("--max-period", max_period)->check(CLI::PositiveNumber);
  detect->add_option("--min-repeats", min_repeats)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build->parsed()) return run_build(src, out_path);
    if (verify->parsed())
      return run_verify(src, check, n_max, k_max, sphere, j_max, format, out_path);
    if (decompose->parsed())
      return run_decompose(src, kind_name, method, tol, out_path);
    if (spectrum->parsed())
      return run_spectrum(src, kind_name, method, spectrum_tol, out_path);
    if (bands->parsed()) return run_bands(period_a, period_b, out_path);
    if (detect->parsed())
      return run_detect(values_text, values_file, max_period, min_repeats);
  } catch (const ResidualError& e) {
    // the decomposition itself detected a non path commuting input
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
