#include "cli.hpp"

#include "knotlight/bateman.hpp"
#include "knotlight/conserved.hpp"
#include "knotlight/errors.hpp"
#include "knotlight/geometry.hpp"
#include "knotlight/io.hpp"
#include "knotlight/topology.hpp"
#include "knotlight/tracer.hpp"
#include "knotlight/verification.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace knotlight::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

/// Bad flag value; reported with the flag name, exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> split_numbers(const std::string& s, char sep, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ConfigError(flag + ": cannot parse '" + s + "'");
    }
  }
  return out;
}

Vec3 parse_vec3(const std::string& s, const std::string& flag) {
  const auto v = split_numbers(s, ',', flag);
  if (v.size() != 3) throw ConfigError(flag + ": expected x,y,z, got '" + s + "'");
  return {v[0], v[1], v[2]};
}

KnotParams parse_kp(const std::string& s) {
  const auto v = split_numbers(s, ',', "--kp");
  if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
    throw ConfigError("--kp: expected p,q integers, got '" + s + "'");
  if (v[0] < 1 || v[1] < 1) throw ConfigError("--kp: p and q must be >= 1");
  return KnotParams(int(v[0]), int(v[1]));
}

KnotParams make_kp(int p, int q) {
  if (p < 1) throw ConfigError("--p: must be >= 1");
  if (q < 1) throw ConfigError("--q: must be >= 1");
  return KnotParams(p, q);
}

FieldKind parse_field(const std::string& s) {
  if (s == "E") return FieldKind::E;
  if (s == "B") return FieldKind::B;
  if (s == "S") return FieldKind::S;
  throw ConfigError("--field: expected E, B or S, got '" + s + "'");
}

struct Grid {
  double lo = 0, hi = 0;
  int n = 0;
};

Grid parse_grid(const std::string& s) {
  const auto v = split_numbers(s, ':', "--grid");
  if (v.size() != 3 || v[2] != std::floor(v[2])) throw ConfigError("--grid: expected a:b:n, got '" + s + "'");
  Grid g{v[0], v[1], int(v[2])};
  if (g.n < 1) throw ConfigError("--grid: resolution must be >= 1");
  if (!(g.hi > g.lo) && g.n > 1) throw ConfigError("--grid: need a < b");
  return g;
}

/// Writes to `path`, or stdout for "-".
void emit(const std::string& path, const std::string& contents) {
  if (path == "-") {
    std::cout << contents;
    return;
  }
  io::write_atomic(path, contents);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::Io, "cannot create directory " + dir);
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  int p = 1, q = 1;
  double t = 0.0;
  std::string grid, out = "-", format = "csv", construction = "knotted";
};

int cmd_sample(const SampleArgs& a) {
  Construction c;
  if (a.construction == "knotted") c = knotted_construction(make_kp(a.p, a.q));
  else if (a.construction == "hopfion") c = hopfion_construction();
  else if (a.construction == "plane-wave") c = plane_wave_construction();
  else throw ConfigError("--construction: expected knotted, hopfion or plane-wave");
  if (a.format != "csv") throw ConfigError("--format: sample supports csv only");
  const Grid g = parse_grid(a.grid);
  auto coord = [&](int i) { return g.n == 1 ? g.lo : g.lo + (g.hi - g.lo) * i / (g.n - 1); };

  std::string out = std::string(io::kSampleHeader) + "\n";
  out.reserve(std::size_t(g.n) * g.n * g.n * 300);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        const SpacetimePoint pt{a.t, coord(i), coord(j), coord(k)};
        out += io::sample_row(pt, rs_decompose(c.field(pt)));
        out += '\n';
      }
  emit(a.out, out);
  return kOk;
}

// ---------------------------------------------------------------- trace

struct TraceArgs {
  int p = 1, q = 1;
  double t = 0.0;
  std::string field = "B", seeds_file, out_dir = ".";
  std::vector<std::string> seeds;
  double arc_length = 500.0;
  double closure_eps = 1e-4;
};

int cmd_trace(const TraceArgs& a) {
  const KnotParams kp = make_kp(a.p, a.q);
  const FieldKind field = parse_field(a.field);
  if (!(a.arc_length > 0)) throw ConfigError("--arc-length: must be positive");
  std::vector<Vec3> seeds;
  for (const auto& s : a.seeds) seeds.push_back(parse_vec3(s, "--seed"));
  if (!a.seeds_file.empty()) {
    const auto more = io::read_seeds(a.seeds_file);
    seeds.insert(seeds.end(), more.begin(), more.end());
  }
  if (seeds.empty()) throw ConfigError("--seed/--seeds-file: no seeds given");
  ensure_dir(a.out_dir);

  TraceConfig cfg;
  cfg.max_arc_length = a.arc_length;
  cfg.closure_eps = a.closure_eps;
  std::string summary;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    json j;
    j["index"] = i;
    j["seed"] = {seeds[i].x(), seeds[i].y(), seeds[i].z()};
    try {
      const TraceResult tr = trace(field, kp, seeds[i], a.t, cfg);
      const std::string file = fmt::format("trace_{}.csv", i);
      io::write_atomic(fs::path(a.out_dir) / file, io::polyline_csv(tr.points));
      j["file"] = file;
      j["termination"] = std::string(to_string(tr.termination));
      j["closed"] = tr.closed;
      j["closure_gap"] = std::isfinite(tr.closure_gap) ? json(tr.closure_gap) : json(nullptr);
      j["arc_length"] = tr.arc_length.empty() ? 0.0 : tr.arc_length.back();
      j["windings"] = {tr.windings.alpha, tr.windings.beta};
      j["windings_determinate"] = tr.windings.determinate;
      j["psi_seed"] = tr.psi_seed;
      j["psi_drift"] = tr.psi_drift;
      j["steps"] = tr.steps;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Io) throw;
      ++failures;
      j["termination"] = e.kind() == ErrorKind::StagnationAtSeed ? "Stagnation" : std::string(to_string(e.kind()));
      j["error"] = e.what();
    }
    summary += j.dump() + "\n";
  }
  io::write_atomic(fs::path(a.out_dir) / "summary.jsonl", summary);
  std::cerr << fmt::format("traced {} seeds, {} failed\n", seeds.size(), failures);
  return failures == seeds.size() ? kVerifyFailed : kOk;
}

// ---------------------------------------------------------------- core

struct CoreArgs {
  int p = 1, q = 1;
  int n = 1024;
  std::string field = "B", format = "csv", out_dir = ".";
};

int cmd_core(const CoreArgs& a) {
  const KnotParams kp = make_kp(a.p, a.q);
  const FieldKind field = parse_field(a.field);
  if (field == FieldKind::S) throw ConfigError("--field: core curves exist for E or B");
  if (a.n < 3) throw ConfigError("--n: need at least 3 points");
  if (a.format != "csv" && a.format != "vtk") throw ConfigError("--format: expected csv or vtk");
  ensure_dir(a.out_dir);

  const std::string tag = fmt::format("core{}_p{}_q{}", a.field, kp.p(), kp.q());
  std::vector<std::vector<Vec3>> curves;
  json listing = json::array();
  for (CoreSign sign : {CoreSign::Plus, CoreSign::Minus}) {
    for (int k = 0; k < kp.gcd(); ++k) {
      auto pts = core_curve({kp, sign, k, field}, a.n);
      const bool plus = sign == CoreSign::Plus;
      if (a.format == "csv") {
        const std::string file = io::polyline_filename(tag, k, plus);
        io::write_atomic(fs::path(a.out_dir) / file, io::polyline_csv(pts));
        listing.push_back(file);
      }
      curves.push_back(std::move(pts));
    }
  }
  if (a.format == "vtk") {
    const std::string file = tag + ".vtk";
    io::write_atomic(fs::path(a.out_dir) / file, io::vtk_polylines(curves, tag));
    listing.push_back(file);
  }
  std::cout << listing.dump() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- link

int cmd_link(const std::vector<std::string>& files) {
  if (files.size() != 2) throw ConfigError("link: expected two polyline files");
  const ClosedCurve a(io::read_polyline(files[0]), true);
  const ClosedCurve b(io::read_polyline(files[1]), true);
  const LinkingResult r = gauss_linking_detail(a, b);
  json j;
  j["linking"] = r.value;
  j["nearest"] = r.nearest;
  j["segments"] = r.segments;
  j["refinements"] = r.refinements;
  std::cout << j.dump() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- invariants

struct InvariantsArgs {
  int p = 1, q = 1;
  double t = 0.0;
  QuadratureSpec qs;
  std::string out = "-";
};

json vec(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

int cmd_invariants(const InvariantsArgs& a) {
  const KnotParams kp = make_kp(a.p, a.q);
  try {
    a.qs.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("quadrature: ") + e.what());
  }
  const ConservedSet c = conserved_set(kp, a.t, a.qs);
  json j;
  j["p"] = kp.p();
  j["q"] = kp.q();
  j["t"] = a.t;
  j["energy"] = c.energy;
  j["P"] = vec(c.P);
  j["L"] = vec(c.L);
  j["H_m"] = c.H_m;
  j["H_e"] = c.H_e;
  j["normalized"] = {{"P", vec(c.normalized.P)},
                     {"L", vec(c.normalized.L)},
                     {"H_m", c.normalized.H_m},
                     {"H_e", c.normalized.H_e}};
  j["truncation_estimate"] = c.truncation_estimate;
  j["quadrature"] = {{"R", a.qs.R}, {"n_r", a.qs.n_r}, {"n_theta", a.qs.n_theta}, {"n_phi", a.qs.n_phi}};
  j["convention"] = kHelicityConvention;
  emit(a.out, j.dump() + "\n");
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::vector<std::string> kp;
  std::vector<double> t;
  std::uint64_t seed = 20130703;
  std::size_t samples = 1000;
  std::string out = "-", inject_fault;
  bool no_tracing = false, no_quadrature = false;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions o = default_verify_options();
  if (!a.kp.empty()) {
    o.kp_list.clear();
    for (const auto& s : a.kp) o.kp_list.push_back(parse_kp(s));
  }
  if (!a.t.empty()) o.times = a.t;
  if (a.samples < 1) throw ConfigError("--samples: must be >= 1");
  o.samples = a.samples;
  o.seed = a.seed;
  o.include_tracing = !a.no_tracing;
  o.include_quadrature = !a.no_quadrature;
  if (!a.inject_fault.empty() && a.inject_fault != "nullity" && a.inject_fault != "maxwell" &&
      a.inject_fault != "s3" && a.inject_fault != "transport")
    throw ConfigError("--inject-fault: unknown fault '" + a.inject_fault + "'");
  o.inject_fault = a.inject_fault;

  const auto reports = run_all(o);
  std::string out;
  std::size_t bad = 0;
  for (const auto& r : reports) {
    out += io::report_line(r) + "\n";
    if (!r.as_expected()) {
      ++bad;
      std::cerr << fmt::format("unexpected: {} [{}] residual {:.3e} tol {:.1e}\n", r.check, r.kp, r.max_residual,
                               r.tolerance);
    }
  }
  emit(a.out, out);
  std::cerr << fmt::format("{} checks, {} unexpected\n", reports.size(), bad);
  return aggregate_pass(reports) ? kOk : kVerifyFailed;
}

void add_kp_flags(CLI::App* sub, int& p, int& q) {
  sub->add_option("--p", p, "winding parameter p >= 1")->capture_default_str();
  sub->add_option("--q", q, "winding parameter q >= 1")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"knotlight: null knotted light fields"};
  app.require_subcommand(1);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "sample (E, B, S, u) on a cubic lattice");
  add_kp_flags(sample, sa.p, sa.q);
  sample->add_option("--t", sa.t, "time")->capture_default_str();
  sample->add_option("--grid", sa.grid, "lattice a:b:n per axis")->required();
  sample->add_option("--construction", sa.construction, "knotted | hopfion | plane-wave")->capture_default_str();
  sample->add_option("--out", sa.out, "output file, - for stdout")->capture_default_str();
  sample->add_option("--format", sa.format, "csv")->capture_default_str();

  TraceArgs ta;
  auto* tr = app.add_subcommand("trace", "trace field lines from seeds");
  add_kp_flags(tr, ta.p, ta.q);
  tr->add_option("--t", ta.t, "time")->capture_default_str();
  tr->add_option("--field", ta.field, "E | B | S")->capture_default_str();
  tr->add_option("--seed", ta.seeds, "seed x,y,z (repeatable)");
  tr->add_option("--seeds-file", ta.seeds_file, "CSV of x,y,z rows");
  tr->add_option("--out-dir", ta.out_dir, "output directory")->capture_default_str();
  tr->add_option("--arc-length", ta.arc_length, "maximum arc length")->capture_default_str();
  tr->add_option("--closure-eps", ta.closure_eps, "closure tolerance")->capture_default_str();

  CoreArgs ca;
  auto* core = app.add_subcommand("core", "emit the extremal core curves");
  add_kp_flags(core, ca.p, ca.q);
  core->add_option("--n", ca.n, "points per curve")->capture_default_str();
  core->add_option("--field", ca.field, "E | B")->capture_default_str();
  core->add_option("--format", ca.format, "csv | vtk")->capture_default_str();
  core->add_option("--out-dir", ca.out_dir, "output directory")->capture_default_str();

  std::vector<std::string> link_files;
  auto* link = app.add_subcommand("link", "Gauss linking number of two polyline files");
  link->add_option("files", link_files, "two polyline CSV files")->required()->expected(2);

  InvariantsArgs ia;
  auto* inv = app.add_subcommand("invariants", "energy, momentum, angular momentum, helicities");
  add_kp_flags(inv, ia.p, ia.q);
  inv->add_option("--t", ia.t, "time")->capture_default_str();
  inv->add_option("--R", ia.qs.R, "ball radius")->capture_default_str();
  inv->add_option("--n-r", ia.qs.n_r, "radial nodes")->capture_default_str();
  inv->add_option("--n-theta", ia.qs.n_theta, "polar nodes")->capture_default_str();
  inv->add_option("--n-phi", ia.qs.n_phi, "azimuthal nodes")->capture_default_str();
  inv->add_option("--out", ia.out, "output file, - for stdout")->capture_default_str();

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "run the verification battery");
  ver->add_option("--kp", va.kp, "p,q (repeatable; default: built-in list)");
  ver->add_option("--t", va.t, "sample time (repeatable)");
  ver->add_option("--seed", va.seed, "RNG seed")->capture_default_str();
  ver->add_option("--samples", va.samples, "random points per check")->capture_default_str();
  ver->add_option("--out", va.out, "JSON-lines report, - for stdout")->capture_default_str();
  ver->add_option("--inject-fault", va.inject_fault, "harness self-test: nullity | maxwell | s3 | transport");
  ver->add_flag("--no-tracing", va.no_tracing, "skip field-line checks");
  ver->add_flag("--no-quadrature", va.no_quadrature, "skip conserved-quantity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*sample) return cmd_sample(sa);
    if (*tr) return cmd_trace(ta);
    if (*core) return cmd_core(ca);
    if (*link) return cmd_link(link_files);
    if (*inv) return cmd_invariants(ia);
    if (*ver) return cmd_verify(va);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Io ? kIoError : kConfigError;
  }
  return kConfigError;
}

}  // namespace knotlight::cli
