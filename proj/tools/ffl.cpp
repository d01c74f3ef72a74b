// ffl - fixed-figure laboratory for finite distance spaces.
//
// Subcommands: validate, analyze, verify, scan, demo-ellipse.
// Exit codes: 0 success/pass, 1 check failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ffl/document.hpp"
#include "ffl/render.hpp"
#include "ffl/scan.hpp"
#include "ffl/verifiers.hpp"

namespace {

using namespace ffl;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

OutputFormat parse_format(const std::string& f) {
  return f == "json" ? OutputFormat::Json : OutputFormat::Text;
}

void emit(OutputFormat fmt, const OrderedJson& j, const std::string& text) {
  if (fmt == OutputFormat::Json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int run_validate(const std::string& path, OutputFormat fmt) {
  DocumentValidation v = validate_document(read_file(path));
  emit(fmt, validation_json(to_string(v.kind), v.result, v.points),
       validation_text(to_string(v.kind), v.result, v.points));
  return v.result.ok() ? 0 : 1;
}

int run_analyze(const std::string& path, OutputFormat fmt,
                const std::optional<Rational>& pinned_a) {
  SpaceDocument doc = parse_document(read_file(path));
  std::vector<Rational> a_values =
      pinned_a ? std::vector<Rational>{*pinned_a} : default_a_sweep();
  Analysis a = analyze_instance(doc.space, doc.map, default_zeta_pool(), a_values);
  emit(fmt, to_json(a, doc.space), render_text(a, doc.space));
  return 0;
}

int status_exit(ReportStatus s) {
  return s == ReportStatus::Pass || s == ReportStatus::Vacuous ? 0 : 1;
}

int run_verify(const std::string& path, OutputFormat fmt, std::string theorem,
               std::vector<std::string> foci, std::optional<std::string> center,
               std::optional<Rational> r, std::optional<Rational> a,
               std::optional<std::string> zeta_spec, std::optional<std::string> figure_spec) {
  SpaceDocument doc = parse_document(read_file(path));
  const VerifyRequest* req = doc.verify ? &*doc.verify : nullptr;

  if (theorem.empty() && req) theorem = req->theorem;
  if (foci.empty() && req) foci = req->foci;
  if (!center && req && req->center) center = req->center;
  if (!r && req && req->r) r = req->r;
  if (!a && req && req->a) a = req->a;
  if (theorem.empty())
    throw CLI::ValidationError("verify", "no theorem given (flag --theorem or [verify] section)");

  std::optional<SimFunc> zeta;
  if (zeta_spec) zeta = SimFunc::from_spec(*zeta_spec);
  else if (doc.zeta) zeta = doc.zeta;
  if (!zeta)
    throw CLI::ValidationError("verify", "no zeta given (flag --zeta or [zeta] section)");

  std::optional<FigureSpec> figure = req ? req->figure : std::nullopt;
  if (figure_spec) {
    auto toks = detail::split_ws(*figure_spec);
    if (toks.size() < 3)
      throw CLI::ValidationError("verify", "--figure looks like '<shape> <centers...> <r>'");
    FigureSpec fs;
    fs.shape = detail::parse_shape(toks[0], 1);
    fs.centers.assign(toks.begin() + 1, toks.end() - 1);
    fs.r = parse_rational(toks.back());
    figure = fs;
  }

  const FiniteDistanceSpace& sp = doc.space;
  const SelfMap& f = doc.map;
  auto need_foci = [&]() {
    if (foci.size() != 2)
      throw CLI::ValidationError("verify", "theorem '" + theorem + "' needs --foci x1,x2");
    return std::pair<int, int>{sp.points().index_of(foci[0]), sp.points().index_of(foci[1])};
  };
  auto need_center = [&]() {
    if (!center)
      throw CLI::ValidationError("verify", "theorem '" + theorem + "' needs --center x0");
    return sp.points().index_of(*center);
  };

  if (theorem == "ellipse") {
    auto foci_idx = need_foci();
    int x1 = foci_idx.first, x2 = foci_idx.second;
    SweepReport sw = run_a_sweep(
        [&](const Rational& av) { return verify_fixed_ellipse(sp, f, *zeta, av, x1, x2); }, a);
    if (a) {
      emit(fmt, to_json(sw.entries.front().report), render_text(sw.entries.front().report));
      return status_exit(sw.entries.front().report.status);
    }
    emit(fmt, to_json(sw), render_text(sw));
    return status_exit(sw.overall);
  }
  if (theorem == "circle" || theorem == "disc") {
    int x0 = need_center();
    bool disc = theorem == "disc";
    SweepReport sw = run_a_sweep(
        [&](const Rational& av) {
          return disc ? verify_fixed_disc(sp, f, *zeta, av, x0)
                      : verify_fixed_circle(sp, f, *zeta, av, x0);
        },
        a);
    if (a) {
      emit(fmt, to_json(sw.entries.front().report), render_text(sw.entries.front().report));
      return status_exit(sw.entries.front().report.status);
    }
    emit(fmt, to_json(sw), render_text(sw));
    return status_exit(sw.overall);
  }
  if (theorem == "ze-contraction") {
    auto foci_idx = need_foci();
    int x1 = foci_idx.first, x2 = foci_idx.second;
    VerifierReport rep = check_ze_contraction(sp, f, *zeta, x1, x2);
    emit(fmt, to_json(rep), render_text(rep));
    return status_exit(rep.status);
  }
  if (theorem == "closed-ellipse") {
    auto foci_idx = need_foci();
    int x1 = foci_idx.first, x2 = foci_idx.second;
    VerifierReport rep = verify_closed_ellipse(sp, f, *zeta, x1, x2);
    emit(fmt, to_json(rep), render_text(rep));
    return status_exit(rep.status);
  }
  if (theorem == "phi-circle") {
    int x0 = need_center();
    if (!r) throw CLI::ValidationError("verify", "theorem 'phi-circle' needs --r");
    VerifierReport rep = verify_phi_circle(sp, f, *zeta, *r, x0);
    emit(fmt, to_json(rep), render_text(rep));
    return status_exit(rep.status);
  }
  if (theorem == "uniqueness") {
    if (!figure)
      throw CLI::ValidationError("verify", "theorem 'uniqueness' needs --figure or [verify] figure");
    Figure fig = figure->resolve(sp);
    SweepReport sw = run_a_sweep(
        [&](const Rational& av) { return verify_uniqueness(sp, f, fig, *zeta, av); }, a);
    if (a) {
      emit(fmt, to_json(sw.entries.front().report), render_text(sw.entries.front().report));
      return status_exit(sw.entries.front().report.status);
    }
    emit(fmt, to_json(sw), render_text(sw));
    return status_exit(sw.overall);
  }
  if (theorem == "identity") {
    Rational rr = r ? *r : Rational(1);
    VerifierReport rep = verify_identity_characterization(sp, f, *zeta, rr);
    emit(fmt, to_json(rep), render_text(rep));
    return status_exit(rep.status);
  }
  throw CLI::ValidationError("verify", "unknown theorem '" + theorem + "'");
}

int run_scan(OutputFormat fmt, const ScanConfig& cfg) {
  ScanReport rep = soundness_scan(cfg);
  emit(fmt, to_json(rep), render_text(rep));
  return rep.ok() ? 0 : 1;
}

int run_demo(OutputFormat fmt, const EllipseDemoConfig& cfg) {
  EllipseDemoReport rep = run_ellipse_demo(cfg);
  emit(fmt, to_json(rep), render_text(rep));
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-figure laboratory for finite metric, s-metric and b-metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string file;
  std::string a_flag, zeta_flag;

  auto* validate = app.add_subcommand("validate", "check the space axioms of a document");
  validate->add_option("file", file, "input .ffl document")->required();

  auto* analyze = app.add_subcommand(
      "analyze", "Fix(f), rho/mu, the fixed-figure catalog and the certification gap");
  analyze->add_option("file", file, "input .ffl document")->required();
  analyze->add_option("--a", a_flag, "pin the contraction parameter a (p/q)");

  auto* verify = app.add_subcommand("verify", "check a named theorem's hypotheses");
  std::string theorem, foci_flag, center_flag, r_flag, figure_flag;
  verify->add_option("file", file, "input .ffl document")->required();
  verify->add_option("--theorem", theorem,
                     "ellipse|circle|disc|closed-ellipse|ze-contraction|phi-circle|"
                     "uniqueness|identity");
  verify->add_option("--foci", foci_flag, "two focus labels, comma separated");
  verify->add_option("--center", center_flag, "center label");
  verify->add_option("--r", r_flag, "radius (p/q)");
  verify->add_option("--a", a_flag, "pin the contraction parameter a (p/q)");
  verify->add_option("--zeta", zeta_flag, "simulation function, family:params or expr:...");
  verify->add_option("--figure", figure_flag, "uniqueness target: '<shape> <centers...> <r>'");

  auto* scan = app.add_subcommand("scan", "seeded randomized soundness scan");
  ScanConfig cfg;
  std::vector<std::string> pool_flag;
  std::string kind_mix_flag = "metric,s-metric,b-metric", policy_flag = "mixed";
  scan->add_option("--seed", cfg.seed, "64-bit seed");
  scan->add_option("--instances", cfg.instances, "number of instances");
  scan->add_option("--min-n", cfg.n_min, "smallest space size");
  scan->add_option("--max-n", cfg.n_max, "largest space size");
  scan->add_option("--kind-mix", kind_mix_flag, "comma list of metric,s-metric,b-metric");
  scan->add_option("--map-policy", policy_flag, "mixed|uniform")
      ->check(CLI::IsMember({"mixed", "uniform"}));
  scan->add_option("--zeta", pool_flag, "zeta pool entries (repeatable)");
  scan->add_option("--a", a_flag, "pin the contraction parameter a (p/q)");

  auto* demo = app.add_subcommand("demo-ellipse", "continuous complex-plane fixed-circle demo");
  EllipseDemoConfig dcfg;
  std::string policy = "as-defined";
  demo->add_option("--samples", dcfg.samples, "number of figure samples");
  demo->add_option("--eps", dcfg.eps, "tolerance");
  demo->add_option("--quadrant-policy", policy, "as-defined|force-inversion")
      ->check(CLI::IsMember({"as-defined", "force-inversion"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return dynamic_cast<const CLI::CallForHelp*>(&e) != nullptr ? code : 2;
  }

  try {
    OutputFormat fmt = parse_format(format);
    std::optional<ffl::Rational> a;
    if (!a_flag.empty()) a = ffl::parse_rational(a_flag);

    if (validate->parsed()) return run_validate(file, fmt);
    if (analyze->parsed()) return run_analyze(file, fmt, a);
    if (verify->parsed()) {
      std::vector<std::string> foci;
      if (!foci_flag.empty()) {
        size_t comma = foci_flag.find(',');
        if (comma == std::string::npos)
          throw CLI::ValidationError("verify", "--foci needs 'x1,x2'");
        foci = {foci_flag.substr(0, comma), foci_flag.substr(comma + 1)};
      }
      std::optional<std::string> center, zeta, figure;
      std::optional<ffl::Rational> r;
      if (!center_flag.empty()) center = center_flag;
      if (!r_flag.empty()) r = ffl::parse_rational(r_flag);
      if (!zeta_flag.empty()) zeta = zeta_flag;
      if (!figure_flag.empty()) figure = figure_flag;
      return run_verify(file, fmt, theorem, foci, center, r, a, zeta, figure);
    }
    if (scan->parsed()) {
      cfg.zeta_pool = pool_flag.empty()
                          ? std::vector<std::string>{"linear:0", "linear:1/4", "linear:1/2",
                                                     "linear:3/4"}
                          : pool_flag;
      cfg.map_policy = policy_flag == "uniform" ? ScanConfig::MapPolicy::UniformTable
                                                : ScanConfig::MapPolicy::MixedFixture;
      cfg.pinned_a = a;
      cfg.kind_mix.clear();
      std::istringstream mix(kind_mix_flag);
      std::string tok;
      while (std::getline(mix, tok, ',')) {
        if (tok == "metric") cfg.kind_mix.push_back(ffl::SpaceKind::Metric);
        else if (tok == "s-metric") cfg.kind_mix.push_back(ffl::SpaceKind::SMetric);
        else if (tok == "b-metric") cfg.kind_mix.push_back(ffl::SpaceKind::BMetric);
        else throw CLI::ValidationError("scan", "unknown kind '" + tok + "'");
      }
      return run_scan(fmt, cfg);
    }
    if (demo->parsed()) {
      dcfg.policy = policy == "force-inversion"
                        ? EllipseDemoConfig::QuadrantPolicy::ForceInversion
                        : EllipseDemoConfig::QuadrantPolicy::AsDefined;
      return run_demo(fmt, dcfg);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ffl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ffl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
