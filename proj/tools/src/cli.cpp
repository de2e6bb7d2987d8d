#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "endlab/admissible.hpp"
#include "endlab/crossratio.hpp"
#include "endlab/decor.hpp"
#include "endlab/error.hpp"
#include "endlab/io.hpp"
#include "endlab/polysurf.hpp"
#include "endlab/rigidity.hpp"
#include "endlab/surface_group.hpp"
#include "endlab/svg.hpp"
#include "endlab/tolerances.hpp"
#include "endlab/volume.hpp"

namespace endlab::cli {

namespace {

constexpr int kPass = 0, kViolation = 1, kInputError = 2;

// Acceptance thresholds used for the exit code of each subcommand.
constexpr double kAdjointTol = 1e-11;
constexpr double kSpanTol = 1e-8;
constexpr double kCrossRatioTol = 1e-10;
constexpr double kHolonomyTol = 1e-9;
constexpr double kRescaleTol = 1e-12;

struct Config {
  std::string command;
  std::vector<std::string> files;
  std::uint64_t seed = 0;
  std::string out;
  double tol_rank = 1e-8;
  int max_cycle = 12;
  int samples = 1000;
  bool structured = false;
  bool simple_cycles_only = true;
  bool hyperideal = false;
  std::string family = "all";
};

// Input problems that are not parse errors (missing file, wrong surface type).
struct InputError : Error {
  using Error::Error;
};

class Report {
public:
  Report(const Config& c, std::string_view report, std::string_view format) {
    kv("tool", fmt::format("endlab {}", kVersion));
    kv("report", fmt::format("{} v1", report));
    if (!format.empty()) kv("format", format);
    kv("seed", c.seed);
    kv("tol.rank", c.tol_rank);
    kv("tol.angle", kDefaultTolerances.angle);
    kv("tol.adjoint", kAdjointTol);
    kv("tol.span", kSpanTol);
    kv("tol.vertex_residual", kCrossRatioTol);
    kv("tol.holonomy", kHolonomyTol);
    kv("tol.rescale", kRescaleTol);
    kv("max_cycle", c.max_cycle);
  }

  void section(std::string_view name) { text_ += fmt::format("[{}]\n", name); }
  void kv(std::string_view key, std::string_view value) { text_ += fmt::format("{}: {}\n", key, value); }
  void kv(std::string_view key, const char* value) { kv(key, std::string_view(value)); }
  void kv(std::string_view key, const std::string& value) { kv(key, std::string_view(value)); }
  void kv(std::string_view key, double value) { kv(key, num(value)); }
  template <typename I>
    requires std::is_integral_v<I>
  void kv(std::string_view key, I value) {
    kv(key, fmt::format("{}", value));
  }
  const std::string& text() const { return text_; }

  // Adding 0.0 turns -0 into 0 so reports do not depend on the sign of zero.
  static std::string num(double x) { return fmt::format("{:.10g}", x + 0.0); }

private:
  std::string text_;
};

std::string darts_text(const std::vector<int>& darts) {
  std::string s;
  for (int d : darts) s += fmt::format("{}{}{}", s.empty() ? "" : " ", (d & 1) ? '-' : '+', CellSurface::edge_of(d));
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string display_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

// --- check-admissible ------------------------------------------------------

int check_admissible(const Config& c, const std::string& path, Report& r) {
  const CellSurface s = io::parse_surf(read_file(path));
  if (!s.has_weights()) throw InputError("surface has no theta weights");
  AdmissibleOptions opt;
  opt.max_cycle = c.max_cycle;
  opt.simple_cycles_only = c.simple_cycles_only;
  const AdmissibleReport a = c.hyperideal ? validate_hyperideal(s, opt) : validate_admissible(s, opt);
  r.kv("input", display_name(path));
  r.kv("condition", c.hyperideal ? "hyperideal" : "admissible");
  r.kv("vertices", s.num_vertices());
  r.kv("edges", s.num_edges());
  r.kv("faces", s.num_faces());
  r.kv("simple_cycles_only", a.simple_cycles_only ? "true" : "false");
  r.section("face_sums");
  for (std::size_t f = 0; f < a.face_sums.size(); ++f) r.kv(fmt::format("face.{}", f), a.face_sums[f]);
  r.section("violations");
  r.kv("count", a.violations.size());
  for (std::size_t k = 0; k < a.violations.size(); ++k) {
    const Violation& v = a.violations[k];
    r.kv(fmt::format("violation.{}", k),
         fmt::format("kind={} face={} sum={} bound={} darts={}", v.kind, v.face, Report::num(v.sum),
                     Report::num(v.bound), darts_text(v.darts)));
  }
  r.section("verdict");
  r.kv("cycles_checked", a.cycles_checked);
  r.kv("verdict", a.pass() ? fmt::format("pass up to max_cycle={}", a.max_cycle) : std::string("fail"));
  return a.pass() ? kPass : kViolation;
}

// --- rigidity --------------------------------------------------------------

PolySurface load_poly(const std::string& path) {
  const io::PolyData p = io::parse_poly(read_file(path));
  try {
    return PolySurface::build(p.base, p.geom);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

int rigidity(const Config& c, const std::string& path, Report& r) {
  const PolySurface s = load_poly(path);
  r.kv("input", display_name(path));
  r.kv("kind", to_string(s.kind()));
  r.kv("vertices", s.num_vertices());
  r.kv("edges", s.base().num_edges());
  r.kv("triangulation_edges", s.num_edges());
  RigidityReport v;
  try {
    v = projective_rigidity_verdict(s, c.tol_rank, c.seed);
  } catch (const IndeterminateRank& e) {
    r.section("spectrum");
    const auto& sv = e.spectrum();
    for (long k = 0; k < sv.size(); ++k) r.kv(fmt::format("sigma.{}", k), sv[k]);
    r.section("verdict");
    r.kv("verdict", fmt::format("indeterminate: {}", e.what()));
    return kViolation;
  }
  r.section("operator");
  r.kv("name", v.op.name);
  r.kv("domain", v.op.domain);
  r.kv("codomain", v.op.codomain);
  r.kv("rows", v.op.matrix.rows());
  r.kv("cols", v.op.matrix.cols());
  r.section("spectrum");
  const auto& sv = v.spectrum.singular_values;
  for (long k = 0; k < sv.size(); ++k) r.kv(fmt::format("sigma.{}", k), sv[k]);
  r.kv("rank", v.spectrum.rank);
  r.kv("kernel_dim", v.spectrum.kernel_dim);
  r.kv("gap", v.spectrum.gap);
  r.kv("margin", v.spectrum.margin);
  r.section("trivial");
  r.kv("trivial_rank", v.trivial_rank);
  r.kv("residual_dim", v.residual_dim);
  r.kv("span_residual", fmt::format("{:.3e}", v.span_residual));
  r.section("adjointness");
  r.kv("pairs", v.adjoint.pairs);
  r.kv("max_relative", fmt::format("{:.3e}", v.adjoint.max_relative));
  r.section("decorations");
  for (std::size_t k = 0; k < v.decorations.size(); ++k) {
    const auto& d = v.decorations[k];
    int covered = 0;
    for (const auto& comp : d.pak.components) covered += comp.proof_covered();
    r.kv(fmt::format("kernel.{}", k), fmt::format("{}; components={} covered={}", d.verdict,
                                                  d.pak.components.size(), covered));
  }
  r.section("notes");
  for (std::size_t k = 0; k < v.notes.size(); ++k) r.kv(fmt::format("note.{}", k), v.notes[k]);
  for (std::size_t k = 0; k < s.diagnostics().size(); ++k) r.kv(fmt::format("diagnostic.{}", k), s.diagnostics()[k]);
  const bool ok = v.residual_dim == 0 && v.span_residual <= kSpanTol && v.adjoint.max_relative <= kAdjointTol;
  r.section("verdict");
  r.kv("verdict", ok ? fmt::format("{} = trivial", v.spectrum.kernel_dim)
                     : fmt::format("{} != trivial {}", v.spectrum.kernel_dim, v.trivial_rank));
  return ok ? kPass : kViolation;
}

// --- render ----------------------------------------------------------------

std::string render(const std::string& path) {
  const PolySurface s = load_poly(path);
  if (s.kind() != VertexKind::Ideal) throw InputError("render needs an ideal surface");
  return render_svg(gauss_circles(s));
}

// --- pak-search ------------------------------------------------------------

constexpr EdgeState kStates[3] = {EdgeState::Unoriented, EdgeState::Forward, EdgeState::Backward};

struct PakTally {
  long tight = 0, not_tight = 0, identity_failures = 0, covered_tight = 0;
};

void tally(const CellSurface& s, const Decoration& d, PakTally& t, std::string* verdict) {
  const TightReport tr = is_tight(s, d);
  const PakReport pr = pak_report(s, d);
  for (const auto& comp : pr.components)
    if (!comp.identities_hold()) ++t.identity_failures;
  if (tr.tight()) {
    ++t.tight;
    if (pr.all_covered()) ++t.covered_tight;
  } else {
    ++t.not_tight;
  }
  if (verdict) *verdict = classify_decoration(s, d);
}

// Orientation of every edge of a breadth-first spanning tree away from vertex 0.
Decoration spanning_tree_decoration(const CellSurface& s) {
  Decoration d = Decoration::trivial(s);
  std::vector<bool> seen(s.num_vertices(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int x : s.star(v)) {
      const int w = s.head(x);
      if (seen[w]) continue;
      seen[w] = true;
      d.state[CellSurface::edge_of(x)] = (x & 1) ? EdgeState::Backward : EdgeState::Forward;
      queue.push_back(w);
    }
  }
  return d;
}

int pak_search(const Config& c, const std::string& path, Report& r) {
  const CellSurface s = io::parse_surf(read_file(path)).without_weights();
  r.kv("input", display_name(path));
  r.kv("genus", s.genus());
  if (s.genus() < 2) {
    r.section("verdict");
    r.kv("verdict", "lemma hypothesis violated: genus < 2");
    return kViolation;
  }
  r.kv("samples", c.samples);
  r.kv("structured", c.structured ? "true" : "false");

  std::mt19937_64 rng(c.seed);
  PakTally random;
  long drawn = 0;
  while (drawn < c.samples) {
    Decoration d = Decoration::trivial(s);
    for (auto& st : d.state) st = kStates[rng() % 3];
    if (d.is_trivial()) continue;
    ++drawn;
    tally(s, d, random, nullptr);
  }
  r.section("random");
  r.kv("tight", random.tight);
  r.kv("not_tight", random.not_tight);
  r.kv("tight_proof_covered", random.covered_tight);
  r.kv("identity_failures", random.identity_failures);

  PakTally structured;
  if (c.structured) {
    r.section("structured");
    std::vector<std::pair<std::string, Decoration>> family;
    for (int e = 0; e < s.num_edges(); ++e) {
      Decoration d = Decoration::trivial(s);
      d.state[e] = EdgeState::Forward;
      family.emplace_back(fmt::format("edge.{}", e), d);
    }
    for (int f = 0; f < s.num_faces(); ++f) {
      Decoration d = Decoration::trivial(s);
      for (int x : s.face_darts(f)) d.state[CellSurface::edge_of(x)] = (x & 1) ? EdgeState::Backward : EdgeState::Forward;
      family.emplace_back(fmt::format("face.{}", f), d);
    }
    family.emplace_back("spanning_tree", spanning_tree_decoration(s));
    Decoration ordered = Decoration::trivial(s);
    for (int e = 0; e < s.num_edges(); ++e)
      ordered.state[e] = s.edge(e)[0] < s.edge(e)[1] ? EdgeState::Forward : EdgeState::Backward;
    family.emplace_back("vertex_order", ordered);
    for (const auto& [name, d] : family) {
      std::string verdict;
      tally(s, d, structured, &verdict);
      r.kv(name, verdict);
    }
    r.kv("tight", structured.tight);
    r.kv("not_tight", structured.not_tight);
    r.kv("tight_proof_covered", structured.covered_tight);
    r.kv("identity_failures", structured.identity_failures);
  }
  // A tight decoration all of whose components are covered by the counting
  // argument would contradict it.
  const bool ok = random.covered_tight == 0 && structured.covered_tight == 0 && random.identity_failures == 0 &&
                  structured.identity_failures == 0;
  r.section("verdict");
  r.kv("verdict", ok ? "no covered tight decoration found" : "contradiction found");
  return ok ? kPass : kViolation;
}

// --- schlafli --------------------------------------------------------------

int schlafli_one(const std::string& name, const IdealFamily& f, const SchlafliOptions& opt, Report& r) {
  const SchlafliResult s = schlafli_residual_ideal(f, opt);
  r.section(name);
  r.kv("s0", opt.s0);
  r.kv("volume", s.volume);
  r.kv("schlafli_sum", s.schlafli_sum);
  r.kv("constraint_defect", fmt::format("{:.3e}", s.constraint_defect));
  for (std::size_t k = 0; k < s.eps.size(); ++k)
    r.kv(fmt::format("residual.{}", k), fmt::format("eps={} value={:.3e}", Report::num(s.eps[k]), s.residual[k]));
  r.kv("order", s.order);
  r.kv("rescale_change", fmt::format("{:.3e}", s.rescale_change));
  const bool ok = s.order >= 1.8 && s.order <= 2.2 && s.rescale_change <= kRescaleTol;
  r.kv("verdict", ok ? "pass" : "fail");
  return ok ? kPass : kViolation;
}

int schlafli(const Config& c, Report& r) {
  int code = kPass;
  if (c.family == "all" || c.family == "tetrahedron") {
    SchlafliOptions opt;
    const AngleTriple base{1.2, 0.9, std::numbers::pi - 2.1};
    code = std::max(code, schlafli_one("tetrahedron", tetrahedron_family(base, {1.0, -1.0, 0.0}), opt, r));
  }
  if (c.family == "all" || c.family == "octahedron") {
    SchlafliOptions opt;
    opt.s0 = 0.3;  // the volume is even in s, so s = 0 is a critical point
    code = std::max(code, schlafli_one("octahedron", octahedron_family(), opt, r));
  }
  return code;
}

// --- crossratio ------------------------------------------------------------

// Loops through each edge outside a breadth-first spanning tree.
std::vector<std::pair<int, std::vector<int>>> tree_loops(const CellSurface& s) {
  std::vector<int> parent_dart(s.num_vertices(), -1);
  std::vector<bool> seen(s.num_vertices(), false), in_tree(s.num_edges(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int x : s.star(v)) {
      const int w = s.head(x);
      if (seen[w]) continue;
      seen[w] = true;
      parent_dart[w] = x;
      in_tree[CellSurface::edge_of(x)] = true;
      queue.push_back(w);
    }
  }
  auto to_root = [&](int v) {
    std::vector<int> path;
    for (; parent_dart[v] >= 0; v = s.tail(parent_dart[v])) path.push_back(CellSurface::twin(parent_dart[v]));
    return path;
  };
  std::vector<std::pair<int, std::vector<int>>> loops;
  for (int e = 0; e < s.num_edges(); ++e) {
    if (in_tree[e]) continue;
    const int d = CellSurface::dart(e, true);
    std::vector<int> loop = to_root(s.tail(d));
    std::reverse(loop.begin(), loop.end());
    for (int& x : loop) x = CellSurface::twin(x);
    loop.push_back(d);
    for (int x : to_root(s.head(d))) loop.push_back(x);
    loops.emplace_back(e, std::move(loop));
  }
  return loops;
}

int crossratio(const Config& c, const std::string& path, Report& r) {
  const std::string text = read_file(path);
  const std::string format = io::format_of(text);
  r.kv("input", display_name(path));
  r.kv("input_format", format + " v1");
  std::optional<CrossRatioAssignment> a;
  bool solved_ok = true;
  if (format == "poly") {
    const PolySurface s = load_poly(path);
    if (s.kind() != VertexKind::Ideal) throw InputError("cross ratios need an ideal surface");
    a = from_ideal_surface(s);
  } else if (format == "cr") {
    a = io::parse_cr(text);
  } else if (format == "surf") {
    SolveOptions opt;
    opt.seed = c.seed;
    const SolveResult sol = solve_vertex_conditions(io::parse_surf(text).without_weights(), opt);
    r.section("solve");
    r.kv("converged", sol.converged ? "true" : "false");
    r.kv("iterations", sol.iterations);
    r.kv("residual", fmt::format("{:.3e}", sol.residual));
    solved_ok = sol.converged;
    a = sol.assignment;
  } else {
    throw InputError("crossratio reads poly, cr or surf files, not " + format);
  }
  const CellSurface& s = a->surface;
  r.kv("conjugate_chart", a->conjugate_chart ? "true" : "false");
  double worst = 0, worst_hol = 0;
  r.section("vertices");
  for (const auto& v : vertex_conditions(*a)) {
    const double off = off_identity(holonomy_loop(*a, vertex_loop(s, v.vertex)));
    r.kv(fmt::format("vertex.{}", v.vertex),
         fmt::format("product={:.3e} sum={:.3e} holonomy_off_identity={:.3e}", v.product, v.sum, off));
    worst = std::max({worst, v.product, v.sum});
    worst_hol = std::max(worst_hol, off);
  }
  r.section("edges");
  const auto split = shear_angle_split(*a);
  for (int e = 0; e < s.num_edges(); ++e)
    r.kv(fmt::format("edge.{}", e), fmt::format("cr={} {} shear={} angle={}", Report::num(a->cr[e].real()),
                                                Report::num(a->cr[e].imag()), Report::num(split[e].shear),
                                                Report::num(split[e].angle)));
  if (s.genus() > 0) {
    r.section("handles");
    const EdgeLabeling labels(s);
    for (const auto& [e, loop] : tree_loops(s)) {
      if (labels.contractible(loop)) continue;
      const auto h = holonomy_loop(*a, loop);
      r.kv(fmt::format("loop.{}", e), fmt::format("word={} abs_trace={}", to_string(labels.path_word(loop)),
                                                  Report::num(std::abs(h.trace()))));
    }
  }
  const bool ok = solved_ok && worst <= kCrossRatioTol && worst_hol <= kHolonomyTol;
  r.section("verdict");
  r.kv("max_vertex_residual", fmt::format("{:.3e}", worst));
  r.kv("max_holonomy_off_identity", fmt::format("{:.3e}", worst_hol));
  r.kv("verdict", ok ? "pass" : "fail");
  return ok ? kPass : kViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Computational checks for convex polyhedral surfaces and circle patterns", "endlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  auto common = [&c](CLI::App* sub, bool needs_files) {
    sub->add_option("--seed", c.seed, "Seed for every random choice")->capture_default_str();
    sub->add_option("--out", c.out, "Write the report to this file instead of stdout");
    sub->add_option("--tol-rank", c.tol_rank, "Relative singular-value threshold")->capture_default_str();
    sub->add_option("--max-cycle", c.max_cycle, "Longest cycle searched")->capture_default_str()->check(CLI::Range(1, 64));
    if (needs_files) sub->add_option("files", c.files, "Input files")->required();
  };
  auto* adm = app.add_subcommand("check-admissible", "Angle conditions on a weighted surface");
  common(adm, true);
  adm->add_flag("--simple-cycles-only,!--all-cycles", c.simple_cycles_only,
                "Search only cycles without repeated vertices (default on)");
  adm->add_flag("--hyperideal", c.hyperideal, "Check the hyperideal conditions on the dual graph");
  common(app.add_subcommand("rigidity", "Infinitesimal rigidity report for a polyhedral surface"), true);
  common(app.add_subcommand("render", "SVG of the Gauss-map circles of an ideal surface"), true);
  auto* pak = app.add_subcommand("pak-search", "Search for tight decorations");
  common(pak, true);
  pak->add_option("--samples", c.samples, "Number of random decorations")->capture_default_str()->check(CLI::NonNegativeNumber);
  pak->add_flag("--structured", c.structured, "Also test single-edge, single-face and spanning decorations");
  auto* sch = app.add_subcommand("schlafli", "Finite-difference check of the Schlafli formula");
  common(sch, false);
  sch->add_option("--family", c.family, "tetrahedron, octahedron or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"all", "tetrahedron", "octahedron"}));
  common(app.add_subcommand("crossratio", "Cross-ratio vertex conditions and holonomy"), true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kInputError;
  }
  c.command = app.get_subcommands().front()->get_name();

  int code = kPass;
  std::string output;
  std::string current;
  try {
    if (c.command == "render") {
      for (const auto& f : c.files) {
        current = f;
        output += render(f);
      }
    } else if (c.command == "schlafli") {
      Report r(c, "schlafli", "");
      code = schlafli(c, r);
      output = r.text();
    } else {
      for (const auto& f : c.files) {
        current = f;
        const bool surf = c.command == "check-admissible" || c.command == "pak-search";
        const std::string report = c.command == "check-admissible" ? "admissibility"
                                   : c.command == "pak-search"    ? "pak-search"
                                                                  : c.command;
        Report r(c, report, c.command == "crossratio" ? "" : surf ? "surf v1" : "poly v1");
        int k = kPass;
        if (c.command == "check-admissible") k = check_admissible(c, f, r);
        else if (c.command == "rigidity") k = rigidity(c, f, r);
        else if (c.command == "pak-search") k = pak_search(c, f, r);
        else k = crossratio(c, f, r);
        code = std::max(code, k);
        output += r.text();
      }
    }
  } catch (const ParseError& e) {
    err << fmt::format("{}: {}\n", current, e.what());
    return kInputError;
  } catch (const Error& e) {
    err << fmt::format("{}: {}\n", current.empty() ? c.command : current, e.what());
    return kInputError;
  }

  if (c.out.empty()) {
    out << output;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      err << "cannot write " << c.out << '\n';
      return kInputError;
    }
    f << output;
  }
  return code;
}

}  // namespace endlab::cli
