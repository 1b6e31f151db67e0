// dstoch: command-line front end for transformation matrices, their Markov and
// Hutchinson iterates, samplers and distances.
//
// Output is key=value lines (comments start with '#'). Exit codes:
// 0 ok, 1 validation failure, 2 parse error, 3 budget exceeded.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dstoch/dstoch.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;
using namespace dstoch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;

struct Run {
  double tol = kDefaultDimensionTol;
  std::size_t budget = 0;  // 0: per-operation default
  std::uint64_t seed = 1;
  std::string manifest_path;

  std::ostringstream out;
  cli::RunManifest manifest;
  int status = kExitOk;

  std::size_t budget_or(std::size_t fallback) const { return budget == 0 ? fallback : budget; }

  template <typename T>
  void kv(const std::string& key, const T& value) {
    out << key << "=" << value << "\n";
  }
  void note(const std::string& text) { out << "# " << text << "\n"; }

  void wrote(const std::string& path) {
    kv("wrote", path);
    manifest.output_file(path);
  }
};

std::string join_cell(const std::vector<std::int64_t>& v, char sep = ' ') {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? std::string(1, sep) : "") + std::to_string(v[k]);
  return s;
}

std::string bool_list(const std::vector<bool>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::string(v[k] ? "true" : "false");
  return s;
}

std::string fmt(double v) { return format_double(v); }

template <typename Writer>
void write_file(Run& run, const std::string& path, Writer w) {
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  {
    auto os = open_output(path);
    w(os);
  }
  run.wrote(path);
}

// ---- validate ----------------------------------------------------------------

void cmd_validate(Run& run, const std::string& src) {
  const TransformationMatrix t = load_matrix(src);
  const auto report = validate_transformation_matrix(t);
  run.kv("source", src);
  run.kv("d", t.d());
  std::vector<std::int64_t> m(t.dims().extents().begin(), t.dims().extents().end());
  run.kv("m", join_cell(m));
  run.kv("support_size", t.support_size());
  run.kv("total_mass", t.total_mass());
  for (const auto& e : report.empty_slices) run.kv("empty_slice", std::to_string(e.coordinate) + "," + std::to_string(e.level));
  run.kv("transformation_matrix", report.ok() ? "ok" : "invalid");
  if (!report.ok()) {
    run.note(report.describe());
    run.status = kExitValidation;
    return;
  }
  for (int j = 1; j <= t.d(); ++j) {
    const auto u = uniformity_condition(t, j);
    run.kv("uniformity." + std::to_string(j), u.holds ? "true" : "false");
    if (!u.holds) {
      run.kv("uniformity." + std::to_string(j) + ".fiber", format_index(*u.violating_fiber, j - 1));
      run.kv("uniformity." + std::to_string(j) + ".sum", u.fiber_sum.str() + " expected " + u.expected.str());
    }
  }
  const auto n = uniform_class_side(t);
  run.kv("uniform_class", n ? "true" : "false");
  if (n) run.kv("N", *n);
  const Ifsp s = build_ifsp(t);
  run.kv("similarity_system", is_similarity_system(s) ? "true" : "false");
  if (n) {
    run.kv("dimension", fmt(attractor_dimension(t, run.tol)));
    run.kv("dimension_exact", "log(" + std::to_string(t.support_size()) + ")/log(" + std::to_string(*n) + ")");
  } else if (is_similarity_system(s)) {
    run.kv("dimension", fmt(attractor_dimension(t, run.tol)));
  } else {
    run.kv("dimension", "unavailable");
    run.note("maps are not similarities; no similarity dimension");
  }
  run.note("ok: " + std::to_string(t.support_size()) + " support points" +
           (n ? ", in U_" + std::to_string(t.d()) + "^" + std::to_string(*n) : ""));
}

// ---- example -----------------------------------------------------------------

const std::vector<std::pair<std::string, std::string>> kExamples{
    {"sierpinski-tetrahedron", "Sierpinski matrix d=3 N=2: support, dimension, volumes, marginals"},
    {"rotation", "rotation matrix for the 3-cycle 231: support, fiber uniqueness"},
    {"modsum", "sum-mod-1 measure: exact marginals and D1 distance to Lebesgue"},
    {"example-5-1", "mixture of the two 3-cycle rotations: 15 points, dimension log15/log3"},
    {"dense-dimension", "permutation averages of Sierpinski d=3 N=3 hitting dimension windows"},
    {"checkerboard", "checkerboard approximations of a depth-4 Sierpinski iterate"},
};

void list_support(Run& run, const TransformationMatrix& t) {
  for (const auto& [k, mass] : t.entries()) run.kv("tau" + format_index(k), mass);
}

void cmd_example(Run& run, const std::string& name) {
  run.kv("example", name);
  if (name == "list") {
    for (const auto& [n, what] : kExamples) run.kv(n, what);
    return;
  }
  if (name == "sierpinski-tetrahedron") {
    const auto t = sierpinski_tau(3, 2);
    list_support(run, t);
    run.kv("dimension", fmt(attractor_dimension(t, run.tol)));
    run.kv("empty_cell_volume", *empty_cell_volume(t));
    CellSet c = CellSet::unit_cube(3);
    for (int n = 1; n <= 5; ++n) {
      c = hutchinson_step(t, c, run.budget_or(kDefaultCellBudget));
      run.kv("volume." + std::to_string(n), cellset_volume(c));
    }
    const auto it = iterate_markov(t, lebesgue(3), 4, run.budget_or(kDefaultCellBudget));
    for (std::size_t n = 1; n < it.size(); ++n) run.kv("uniform_marginals." + std::to_string(n), bool_list(uniform_marginals(it[n])));
    return;
  }
  if (name == "rotation") {
    const auto t = rotation_tau({2, 3, 1});
    list_support(run, t);
    run.kv("uniform_class", is_uniform_class(t, 3) ? "true" : "false");
    run.kv("fiber_unique.3", fiber_uniqueness(t, 3) ? "true" : "false");
    run.kv("dimension", fmt(attractor_dimension(t, run.tol)));
    return;
  }
  if (name == "modsum") {
    for (int k : {4, 8, 16}) {
      const auto mu = modsum_grid_measure(3, k);
      run.kv("uniform_marginals.k" + std::to_string(k), bool_list(uniform_marginals(mu)));
      run.kv("d1_to_lebesgue.k" + std::to_string(k), fmt(d1_distance(mu, lebesgue(3, k))));
    }
    run.note("continuum value 1/3");
    return;
  }
  if (name == "example-5-1") {
    const auto t = rotation_mixture_tau();
    list_support(run, t);
    run.kv("support_size", t.support_size());
    run.kv("uniform_class", is_uniform_class(t, 3) ? "true" : "false");
    run.kv("dimension", fmt(attractor_dimension(t, run.tol)));
    run.kv("dimension_exact", "log(15)/log(3)");
    return;
  }
  if (name == "dense-dimension") {
    for (int k : {2, 3}) {
      const auto r = dense_dimension_tau(3, 3, k);
      const std::string p = ".k" + std::to_string(k);
      run.kv("terms" + p, r.terms);
      run.kv("support_size" + p, r.sigma.support_size());
      run.kv("dimension" + p, fmt(attractor_dimension(r.sigma, run.tol)));
      run.kv("lower" + p, fmt(std::log(k - 1.0) / std::log(3.0) + 2.0));
      run.kv("upper" + p, fmt(std::log(static_cast<double>(k)) / std::log(3.0) + 2.0));
    }
    return;
  }
  if (name == "checkerboard") {
    const auto t = sierpinski_tau(3, 2);
    const auto mu = iterate_markov(t, lebesgue(3), 4, run.budget_or(kDefaultCellBudget)).back();
    for (int n : {2, 4, 8}) {
      const auto cb = checkerboard_tau(mu, n);
      const auto image = markov_step(cb, lebesgue(3), run.budget_or(kDefaultCellBudget));
      const auto sd = copula_sup_distance(image, mu, run.budget_or(kDefaultVertexBudget));
      run.kv("delta.N" + std::to_string(n), sd.vertex_max);
      run.kv("delta_bound.N" + std::to_string(n), fmt(sd.bound()));
    }
    return;
  }
  throw StructuralError("unknown example '" + name + "' (try 'example list')");
}

// ---- iterate -----------------------------------------------------------------

void cmd_iterate(Run& run, const std::string& src, int n, const std::string& out_dir, const std::string& start) {
  const TransformationMatrix t = load_matrix(src);
  require_valid(t);
  if (!uniform_class_side(t)) {
    throw UnsupportedConfiguration("exact iteration needs a matrix in U_d^N; use 'sample' for '" + src + "'");
  }
  if (n < 0) throw StructuralError("--n must be >= 0");
  GridMeasure mu = start.empty() ? lebesgue(t.d()) : load_measure(start);
  run.kv("source", src);
  run.kv("start", start.empty() ? "lebesgue" : start);
  const auto emit = [&](int k, const GridMeasure& m) {
    const std::string p = ".n" + std::to_string(k);
    run.kv("cells" + p, m.size());
    run.kv("resolution" + p, join_cell(m.resolution(), ','));
    run.kv("uniform_marginals" + p, bool_list(uniform_marginals(m)));
    const std::string path = (fs::path(out_dir) / ("iterate_" + std::to_string(k) + ".gmx")).string();
    write_file(run, path, [&](std::ostream& os) { write_gmx(os, m); });
  };
  if (n == 0) {
    emit(0, mu);
    return;
  }
  for (int k = 1; k <= n; ++k) {
    mu = markov_step(t, mu, run.budget_or(kDefaultCellBudget));
    emit(k, mu);
  }
}

// ---- support -----------------------------------------------------------------

void cmd_support(Run& run, const std::string& src, int n, const std::string& format, const std::string& out,
                 bool weld) {
  const TransformationMatrix t = load_matrix(src);
  if (n < 0) throw StructuralError("--n must be >= 0");
  if (format == "ply" && t.d() != 3) {
    throw UnsupportedConfiguration("PLY export needs d = 3, got d = " + std::to_string(t.d()));
  }
  const CellSet c = hutchinson_iterate(t, n, run.budget_or(kDefaultCellBudget));
  const Rational vol = cellset_volume(c);
  run.kv("source", src);
  run.kv("depth", n);
  run.kv("cells", c.size());
  run.kv("volume", vol);
  run.kv("volume_decimal", fmt(vol.to_double()));
  if (const auto q = empty_cell_volume(t)) {
    run.kv("q", *q);
    run.kv("volume_bound", pow(Rational{1} - *q, static_cast<unsigned>(n)));
  } else {
    run.note("full support: no empty cell, volume stays 1");
  }
  if (out.empty()) return;
  write_file(run, out, [&](std::ostream& os) {
    if (format == "ply") {
      write_cellset_ply(os, c, weld);
    } else if (format == "csv") {
      write_cellset_csv(os, c);
    } else {
      write_cellset_rects(os, c);
    }
  });
}

// ---- sample / marginal ---------------------------------------------------------

void cmd_sample(Run& run, const std::string& src, std::size_t count, int burn_in, int thin, const std::string& out) {
  const TransformationMatrix t = load_matrix(src);
  const SampleCloud cloud = chaos_game(t, count, run.seed, burn_in, thin);
  if (out.empty() || out == "-") {
    write_samples_csv(run.out, cloud);
    return;
  }
  write_file(run, out, [&](std::ostream& os) { write_samples_csv(os, cloud); });
  run.kv("count", cloud.size());
  run.kv("seed", cloud.seed);
  run.kv("algorithm", cloud.algorithm);
}

void cmd_marginal(Run& run, const std::string& src, int drop, const std::string& out) {
  const GridMeasure mu = load_measure(src);
  const GridMeasure m = marginal(mu, drop);
  run.kv("source", src);
  run.kv("drop", drop);
  run.kv("uniform", is_uniform_grid(m) ? "true" : "false");
  if (const auto bad = first_nonuniform_fiber(mu, drop)) {
    run.kv("first_nonuniform_cell", format_cell(*bad));
    run.kv("first_nonuniform_mass", m.at(*bad));
    run.kv("expected_mass", m.cell_volume());
  }
  if (out.empty()) {
    write_gmx(run.out, m);
  } else {
    write_file(run, out, [&](std::ostream& os) { write_gmx(os, m); });
  }
}

// ---- metrics -----------------------------------------------------------------

void cmd_wasserstein(Run& run, const std::string& a, const std::string& b, const std::string& plan) {
  const GridMeasure mu = load_measure(a), nu = load_measure(b);
  const auto r = wasserstein1(mu, nu, run.budget_or(kDefaultTransportBudget));
  const auto cert = certify_transport(mu, nu, r);
  run.kv("metric", "wasserstein1");
  run.kv("distance", fmt(r.distance));
  run.kv("discretization_bound", fmt(r.discretization_bound));
  run.kv("plan_entries", r.plan.entries.size());
  run.kv("certificate_feasible", cert.feasible ? "true" : "false");
  run.kv("certificate_min_reduced_cost", fmt(cert.min_reduced_cost));
  run.kv("certificate_max_slack", fmt(cert.max_slack_on_support));
  run.kv("certificate_optimal", cert.optimal(1e-9) ? "true" : "false");
  if (!plan.empty()) write_file(run, plan, [&](std::ostream& os) { write_transport_plan(os, r.plan); });
}

void cmd_d1(Run& run, const std::string& a, const std::string& b) {
  run.kv("metric", "d1");
  run.kv("distance", fmt(d1_distance(load_measure(a), load_measure(b), run.budget_or(kDefaultD1Budget))));
}

void cmd_sup(Run& run, const std::string& a, const std::string& b) {
  const auto sd = copula_sup_distance(load_measure(a), load_measure(b), run.budget_or(kDefaultVertexBudget));
  run.kv("metric", "copula_sup");
  run.kv("vertex_max", sd.vertex_max);
  run.kv("vertex_max_decimal", fmt(sd.vertex_max.to_double()));
  run.kv("slack", fmt(sd.slack));
  run.kv("bound", fmt(sd.bound()));
  run.kv("grid", join_cell(sd.grid, ','));
}

void cmd_ks(Run& run, int coord, const std::string& input, double alpha) {
  SampleCloud cloud;
  if (input.empty() || input == "-") {
    cloud = read_samples_csv(std::cin);
  } else {
    auto in = open_input(input);
    cloud = read_samples_csv(in);
  }
  const auto r = ks_uniformity(cloud.axis(coord));
  run.kv("metric", "ks_uniform");
  run.kv("coord", coord);
  run.kv("n", cloud.size());
  run.kv("statistic", fmt(r.statistic));
  run.kv("p_value", fmt(r.p_value));
  run.kv("alpha", fmt(alpha));
  run.kv("reject", r.p_value < alpha ? "true" : "false");
}

// ---- dimension / checkerboard / export -----------------------------------------

void cmd_dimension(Run& run, const std::string& src, const std::string& scales) {
  if (!scales.empty()) {
    std::vector<double> c;
    std::stringstream ss(scales);
    for (std::string tok; std::getline(ss, tok, ',');) {
      try {
        c.push_back(Rational::parse(tok).to_double());
      } catch (const std::invalid_argument&) {
        c.push_back(std::stod(tok));
      }
    }
    run.kv("maps", c.size());
    run.kv("dimension", fmt(similarity_dimension(c, run.tol)));
    return;
  }
  const TransformationMatrix t = load_matrix(src);
  const Ifsp s = build_ifsp(t);
  run.kv("source", src);
  run.kv("support_size", t.support_size());
  if (const auto n = uniform_class_side(t)) {
    run.kv("closed_form", fmt(std::log(static_cast<double>(t.support_size())) / std::log(static_cast<double>(*n))));
  }
  if (is_similarity_system(s)) {
    run.kv("bisection", fmt(similarity_dimension(similarity_ratios(s), run.tol)));
  } else {
    throw UnsupportedConfiguration("maps of '" + src + "' are not similarities");
  }
  run.kv("tol", fmt(run.tol));
}

void cmd_checkerboard(Run& run, const std::string& src, int n, const std::string& samples, const std::string& out) {
  TransformationMatrix t;
  if (!samples.empty()) {
    auto in = open_input(samples);
    const auto cb = checkerboard_tau(read_samples_csv(in), n);
    t = cb.tau;
    run.kv("approximate", "true");
    run.kv("samples", cb.samples);
  } else {
    t = checkerboard_tau(load_measure(src), n);
    run.kv("approximate", "false");
  }
  run.kv("N", n);
  run.kv("uniform_class", is_uniform_class(t, n) ? "true" : "false");
  if (out.empty()) {
    write_tmx(run.out, t);
  } else {
    write_file(run, out, [&](std::ostream& os) { write_tmx(os, t); });
  }
}

void cmd_export(Run& run, const std::string& src, const std::string& format, const std::string& out) {
  const Source s = load_source(src);
  const auto write = [&](std::ostream& os) {
    if (format == "gmx") {
      write_gmx(os, std::holds_alternative<GridMeasure>(s) ? std::get<GridMeasure>(s) : load_measure(src));
    } else if (format == "ifsp") {
      write_ifsp(os, build_ifsp(std::get<TransformationMatrix>(s)));
    } else {
      if (!std::holds_alternative<TransformationMatrix>(s)) throw StructuralError("'" + src + "' is not a matrix");
      write_tmx(os, std::get<TransformationMatrix>(s));
    }
  };
  if (format == "ifsp" && !std::holds_alternative<TransformationMatrix>(s)) {
    throw StructuralError("'" + src + "' is not a matrix");
  }
  if (out.empty()) {
    write(run.out);
  } else {
    write_file(run, out, write);
  }
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int k = 0; k < argc; ++k) {
    std::string a = argv[k];
    if (k == 0) a = "dstoch";
    if (a.find_first_of(" \t'\"") != std::string::npos) a = "'" + a + "'";
    s += (k ? " " : "") + a;
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"d-stochastic fractal measures: matrices, iterates, samples, distances"};
  app.require_subcommand(1);
  app.fallthrough();
  Run run;
  app.add_option("--tol", run.tol, "bisection tolerance for dimensions")->check(CLI::PositiveNumber);
  app.add_option("--budget", run.budget, "cell/vertex budget (0 = per-operation default)");
  app.add_option("--seed", run.seed, "sampler seed");
  app.add_option("--manifest", run.manifest_path, "write a run manifest to this path");

  std::string src, src_b, out, out_dir = ".", format = "rects", export_format = "tmx", start, plan, samples, scales, input;
  int n = 0, drop = 1, coord = 1, burn_in = kDefaultBurnIn, thin = kDefaultThin, side = 2;
  std::size_t count = 10000;
  double alpha = 0.01;
  bool weld = false;

  auto* validate = app.add_subcommand("validate", "check a TMX file or preset");
  validate->add_option("source", src, "TMX path or preset")->required();

  auto* example = app.add_subcommand("example", "reproduce a named example ('list' for names)");
  example->add_option("name", src)->required();

  auto* iterate = app.add_subcommand("iterate", "exact Markov iterates V^k(mu0), k = 1..n, as GMX files");
  iterate->add_option("source", src)->required();
  iterate->add_option("-n,--n", n, "number of iterations")->required();
  iterate->add_option("--out", out_dir, "output directory");
  iterate->add_option("--start", start, "initial GMX measure or preset (default Lebesgue)");

  auto* support = app.add_subcommand("support", "depth-n Hutchinson cell set");
  support->add_option("source", src)->required();
  support->add_option("-n,--n", n, "depth")->required();
  support->add_option("--format", format)->check(CLI::IsMember({"rects", "ply", "csv"}));
  support->add_option("--out", out, "output file");
  support->add_flag("--weld", weld, "PLY: share coincident vertices");

  auto* sample = app.add_subcommand("sample", "chaos-game samples as CSV");
  sample->add_option("source", src)->required();
  sample->add_option("--count", count)->check(CLI::PositiveNumber);
  sample->add_option("--burn-in", burn_in)->check(CLI::NonNegativeNumber);
  sample->add_option("--thin", thin, "keep every k-th step")->check(CLI::PositiveNumber);
  sample->add_option("--out", out, "output CSV (default stdout)");

  auto* marg = app.add_subcommand("marginal", "marginal dropping one axis");
  marg->add_option("source", src)->required();
  marg->add_option("--drop", drop, "axis to drop (1-based)");
  marg->add_option("--out", out);

  auto* metric = app.add_subcommand("metric", "distances and tests");
  metric->require_subcommand(1);
  auto* w1 = metric->add_subcommand("wasserstein", "W1 between cell-center discretizations");
  w1->add_option("a", src)->required();
  w1->add_option("b", src_b)->required();
  w1->add_option("--plan", plan, "write the optimal plan here");
  auto* d1 = metric->add_subcommand("d1", "Markov-kernel metric D1");
  d1->add_option("a", src)->required();
  d1->add_option("b", src_b)->required();
  auto* sup = metric->add_subcommand("sup", "copula sup-distance bound");
  sup->add_option("a", src)->required();
  sup->add_option("b", src_b)->required();
  auto* ks = metric->add_subcommand("ks", "KS uniformity test of one sample coordinate (CSV on stdin)");
  ks->add_option("--coord", coord);
  ks->add_option("--input", input, "CSV file instead of stdin");
  ks->add_option("--alpha", alpha);

  auto* dimension = app.add_subcommand("dimension", "similarity dimension");
  dimension->add_option("source", src);
  dimension->add_option("--scales", scales, "comma-separated contraction ratios");

  auto* checker = app.add_subcommand("checkerboard", "checkerboard matrix tau^N of a measure or sample file");
  checker->add_option("source", src);
  checker->add_option("-N,--N", side)->check(CLI::Range(2, 1 << 20));
  checker->add_option("--samples", samples, "sample CSV instead of a measure");
  checker->add_option("--out", out);

  auto* exp = app.add_subcommand("export", "write a preset or file as TMX, GMX or IFSP");
  exp->add_option("source", src)->required();
  exp->add_option("--format", export_format)->check(CLI::IsMember({"tmx", "gmx", "ifsp"}));
  exp->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  int status = kExitOk;
  try {
    if (*validate) cmd_validate(run, src);
    if (*example) cmd_example(run, src);
    if (*iterate) cmd_iterate(run, src, n, out_dir, start);
    if (*support) cmd_support(run, src, n, format, out, weld);
    if (*sample) cmd_sample(run, src, count, burn_in, thin, out);
    if (*marg) cmd_marginal(run, src, drop, out);
    if (*w1) cmd_wasserstein(run, src, src_b, plan);
    if (*d1) cmd_d1(run, src, src_b);
    if (*sup) cmd_sup(run, src, src_b);
    if (*ks) cmd_ks(run, coord, input, alpha);
    if (*dimension) {
      if (src.empty() && scales.empty()) throw StructuralError("dimension: give a source or --scales");
      cmd_dimension(run, src, scales);
    }
    if (*checker) {
      if (src.empty() == samples.empty()) throw StructuralError("checkerboard: give exactly one of source or --samples");
      cmd_checkerboard(run, src, side, samples, out);
    }
    if (*exp) cmd_export(run, src, export_format, out);
    status = run.status;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    status = kExitParse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    status = kExitBudget;
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    status = kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = kExitValidation;
  }

  const std::string text = run.out.str();
  std::cout << text << std::flush;

  if (!run.manifest_path.empty()) {
    run.manifest.command = command_line(argc, argv);
    run.manifest.settings = {{"format.tmx", std::to_string(kTmxVersion)},
                             {"format.gmx", std::to_string(kGmxVersion)},
                             {"format.cells", "1"},
                             {"sampler", kChaosGameAlgorithm},
                             {"seed", std::to_string(run.seed)},
                             {"budget", std::to_string(run.budget)},
                             {"tol", format_double(run.tol)},
                             {"exit", std::to_string(status)}};
    run.manifest.output_text("stdout", text);
    std::ofstream mf(run.manifest_path);
    if (!mf) {
      std::cerr << "error: cannot write manifest '" << run.manifest_path << "'\n";
      return status == kExitOk ? kExitValidation : status;
    }
    run.manifest.write(mf);
  }
  return status;
}
