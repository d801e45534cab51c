// Command-line front end: every computation of the library is reachable as
// a subcommand emitting JSON or CSV (stdout or --out), diagnostics on
// stderr. Exit codes: 0 success, 2 bad flags, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elp/el_points.hpp"
#include "elp/euler_family.hpp"
#include "elp/lagrange.hpp"
#include "elp/numerics.hpp"
#include "elp/verify.hpp"
#include "emit.hpp"

namespace {

using elp::cli::fmt17;
using elp::cli::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out = "-";
  double tol = 1e-12;
  bool quiet = false;

  elp::RootConfig cfg() const {
    elp::RootConfig c;
    c.abs_tol = tol;
    return c;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "output file, or - for stdout");
  sub->add_option("--tol", c.tol, "residual tolerance for the solvers")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--quiet", c.quiet, "suppress the stderr progress line");
}

class Progress {
 public:
  Progress(std::string name, bool quiet)
      : name_(std::move(name)),
        quiet_(quiet),
        start_(std::chrono::steady_clock::now()) {}
  ~Progress() {
    if (quiet_) return;
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    std::cerr << "elp: " << name_ << " finished in " << ms << " ms\n";
  }

 private:
  std::string name_;
  bool quiet_;
  std::chrono::steady_clock::time_point start_;
};

Json envelope(const std::string& command, Json inputs, Json results) {
  Json j;
  j["schema_version"] = "1";
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["results"] = std::move(results);
  return j;
}

Json report_json(const elp::ResidualReport& rep) {
  Json entries = Json::array();
  for (const auto& [name, value] : rep.eq_residuals)
    entries.push_back(Json{{"name", name}, {"value", value}});
  Json j;
  j["eq_residuals"] = std::move(entries);
  j["max_residual"] = rep.max_residual;
  if (rep.drift) {
    j["drift"] = Json{{"radius_drift", rep.drift->radius_drift},
                      {"angular_rate_drift", rep.drift->angular_rate_drift}};
  }
  return j;
}

Json solution_json(const elp::EulerSolution& s) {
  return Json{
      {"r2", s.r2()}, {"r3", s.r3()}, {"m1", s.m1}, {"m2", s.m2}, {"m3", s.m3}};
}

// ---------------------------------------------------------------- family

struct FamilyArgs {
  Common common;
  double r2_min = 0.0;
  double r2_max = 0.0;
  int samples = 128;
  std::string format = "csv";
};

void run_family(const FamilyArgs& a) {
  if (!(a.r2_min >= 0.0 && a.r2_min < a.r2_max))
    throw UsageError("family requires 0 <= --r2-min < --r2-max");
  if (a.samples < 2) throw UsageError("family requires --samples >= 2");
  Progress prog("family", a.common.quiet);
  const elp::RootConfig cfg = a.common.cfg();

  std::vector<std::array<double, 3>> rows;
  rows.reserve(a.samples);
  for (int i = 0; i < a.samples; ++i) {
    const double r2 =
        a.r2_min + (a.r2_max - a.r2_min) * static_cast<double>(i) /
                       static_cast<double>(a.samples - 1);
    const double r3 = elp::eval_f(r2, cfg);
    rows.push_back({r2, r3, elp::eval_p(r2, r3)});
  }

  std::string payload;
  if (a.format == "csv") {
    payload = "r2,r3,p_residual\n";
    for (const auto& row : rows)
      payload +=
          fmt17(row[0]) + "," + fmt17(row[1]) + "," + fmt17(row[2]) + "\n";
  } else {
    Json jrows = Json::array();
    for (const auto& row : rows)
      jrows.push_back(
          Json{{"r2", row[0]}, {"r3", row[1]}, {"p_residual", row[2]}});
    Json inputs{{"r2_min", a.r2_min},
                {"r2_max", a.r2_max},
                {"samples", a.samples},
                {"tol", a.common.tol}};
    Json results;
    results["rows"] = std::move(jrows);
    payload = elp::cli::dump_json(
        envelope("family", std::move(inputs), std::move(results)));
  }
  elp::cli::write_payload(a.common.out, payload);
}

// -------------------------------------------------------------------- es

struct EsArgs {
  Common common;
  double r2 = 0.0;
  double m3 = 0.0;
};

void run_es(const EsArgs& a) {
  Progress prog("es", a.common.quiet);
  const elp::EulerSolution sol =
      elp::build_solution(a.r2, a.m3, a.common.cfg());
  Json j = envelope("es", Json{{"r2", a.r2}, {"m3", a.m3}, {"tol", a.common.tol}},
                    solution_json(sol));
  j["residuals"] = report_json(elp::check_es_equations(sol));
  elp::cli::write_payload(a.common.out, elp::cli::dump_json(j));
}

// -------------------------------------------------------------- lagrange

struct LagrangeArgs {
  Common common;
  double x = 0.0;
};

void run_lagrange(const LagrangeArgs& a) {
  Progress prog("lagrange", a.common.quiet);
  const elp::RootConfig cfg = a.common.cfg();
  const elp::LagrangeSet ls = elp::lagrange_points(a.x, cfg);
  Json results{{"x", ls.x},
               {"l1", ls.l1},
               {"l2", ls.l2},
               {"l3", ls.l3},
               {"l4", Json::array({ls.l4.x, ls.l4.y})},
               {"l5", Json::array({ls.l5.x, ls.l5.y})}};
  Json j = envelope("lagrange", Json{{"x", a.x}, {"tol", a.common.tol}},
                    std::move(results));
  j["residuals"] = report_json(elp::verify_lagrange(a.x, cfg));
  elp::cli::write_payload(a.common.out, elp::cli::dump_json(j));
}

// -------------------------------------------------------------------- el

struct ElArgs {
  Common common;
  double r2 = 0.0;
  double m3 = 0.0;
};

void run_el(const ElArgs& a) {
  Progress prog("el", a.common.quiet);
  const elp::RootConfig cfg = a.common.cfg();
  const elp::EulerSolution sol = elp::build_solution(a.r2, a.m3, cfg);
  const elp::ELSet set = elp::find_el_points(sol, cfg);

  Json points = Json::array();
  std::vector<std::pair<std::string, double>> entries;
  for (const elp::ELPoint& p : set.points) {
    points.push_back(Json{{"r4", p.r4},
                          {"r5", p.r5},
                          {"klass", elp::to_string(p.klass)},
                          {"residual", p.residual}});
    entries.emplace_back(elp::to_string(p.klass), p.residual);
  }
  Json results;
  results["solution"] = solution_json(set.solution);
  results["points"] = std::move(points);
  Json j = envelope("el", Json{{"r2", a.r2}, {"m3", a.m3}, {"tol", a.common.tol}},
                    std::move(results));
  j["residuals"] = report_json(elp::make_report(std::move(entries)));
  elp::cli::write_payload(a.common.out, elp::cli::dump_json(j));
}

// ----------------------------------------------------------------- curve

struct CurveArgs {
  Common common;
  double r2 = 0.0;
  double step = 0.01;
};

void run_curve(const CurveArgs& a) {
  if (!(a.step > 0.0)) throw UsageError("curve requires --step > 0");
  Progress prog("curve", a.common.quiet);
  const std::vector<elp::CurveSample> samples =
      elp::q3q4_locus(a.r2, a.step, a.common.cfg());
  std::string payload = "r4,r5,m3_common,physical\n";
  for (const elp::CurveSample& s : samples)
    payload += fmt17(s.r4) + "," + fmt17(s.r5) + "," + fmt17(s.m3) + "," +
               (s.physical ? "1" : "0") + "\n";
  elp::cli::write_payload(a.common.out, payload);
}

// ----------------------------------------------------------------- param

struct ParamArgs {
  Common common;
  double w = -1.0;
  double w_min = 0.0;
  double w_max = -1.0;
  int samples = 64;
  bool w_given = false;
  bool w_max_given = false;
};

void run_param(const ParamArgs& a) {
  Progress prog("param", a.common.quiet);
  const elp::RootConfig cfg = a.common.cfg();
  std::vector<double> ws;
  if (a.w_given) {
    ws.push_back(a.w);
  } else if (a.w_max_given) {
    if (!(a.w_min >= 0.0 && a.w_min < a.w_max))
      throw UsageError("param requires 0 <= --w-min < --w-max");
    if (a.samples < 2) throw UsageError("param requires --samples >= 2");
    for (int i = 0; i < a.samples; ++i)
      ws.push_back(a.w_min + (a.w_max - a.w_min) * static_cast<double>(i) /
                                 static_cast<double>(a.samples - 1));
  } else {
    throw UsageError("param requires --w or --w-min/--w-max/--samples");
  }

  std::string payload = "w,G,r3,p_residual\n";
  for (double w : ws) {
    const double g = elp::parametrize_G(w, cfg);
    const double r3 = g + w + 1.0;
    payload += fmt17(w) + "," + fmt17(g) + "," + fmt17(r3) + "," +
               fmt17(elp::eval_p(g, r3)) + "\n";
  }
  elp::cli::write_payload(a.common.out, payload);
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  double r2 = 0.0;
  double m3 = 0.0;
  bool r2_given = false;
  bool m3_given = false;
  std::string from_json;
  double r4 = 0.0;
  double r5 = 0.0;
  bool r4_given = false;
  bool r5_given = false;
  bool integrate = false;
  int periods = 1;
  int dt_div = 4096;
};

elp::EulerSolution load_solution(const VerifyArgs& a) {
  if (!a.from_json.empty()) {
    std::ifstream f(a.from_json);
    if (!f) throw UsageError("cannot open --from-json file: " + a.from_json);
    const nlohmann::json doc = nlohmann::json::parse(f);
    const nlohmann::json& src =
        doc.contains("results") ? doc.at("results") : doc;
    return elp::solution_from_values(
        src.at("r2").get<double>(), src.at("r3").get<double>(),
        src.at("m1").get<double>(), src.at("m2").get<double>(),
        src.at("m3").get<double>());
  }
  if (!a.r2_given || !a.m3_given)
    throw UsageError("verify requires --r2 and --m3 (or --from-json)");
  return elp::build_solution(a.r2, a.m3, a.common.cfg());
}

void run_verify(const VerifyArgs& a) {
  if (a.r4_given != a.r5_given)
    throw UsageError("verify requires --r4 and --r5 together");
  if (a.periods < 1 || a.dt_div < 4)
    throw UsageError("verify requires --periods >= 1 and --dt-div >= 4");
  Progress prog("verify", a.common.quiet);

  const elp::EulerSolution sol = load_solution(a);
  elp::ResidualReport es = elp::check_es_equations(sol);
  std::vector<std::pair<std::string, double>> entries = es.eq_residuals;
  if (a.r4_given) {
    const elp::ResidualReport probe = elp::accel_residual(sol, a.r4, a.r5);
    for (const auto& e : probe.eq_residuals) entries.push_back(e);
  }
  elp::ResidualReport rep = elp::make_report(std::move(entries));

  if (a.integrate) {
    const auto xs = elp::positions_at(sol, 0.0);
    std::vector<elp::BodyState> bodies;
    const std::array<double, 3> ms{sol.m1, sol.m2, sol.m3};
    for (int i = 0; i < 3; ++i)
      bodies.push_back({xs[i], {-xs[i].y, xs[i].x}, ms[i]});
    if (a.r4_given)
      bodies.push_back({{a.r4, a.r5}, {-a.r5, a.r4}, 0.0});
    const double period = 2.0 * std::numbers::pi;
    const double dt = period / static_cast<double>(a.dt_div);
    const elp::IntegrationResult ir =
        elp::integrate_nbody(bodies, a.periods * period, dt);
    rep.drift =
        elp::DriftMetrics{ir.max_radius_drift, ir.max_angular_rate_drift};
    if (ir.step_too_large)
      std::cerr << "elp: warning: step too large (relative energy drift "
                << fmt17(ir.energy_drift_rel) << ")\n";
  }

  Json inputs;
  if (!a.from_json.empty()) inputs["from_json"] = a.from_json;
  if (a.r2_given) inputs["r2"] = a.r2;
  if (a.m3_given) inputs["m3"] = a.m3;
  if (a.r4_given) {
    inputs["r4"] = a.r4;
    inputs["r5"] = a.r5;
  }
  if (a.integrate) {
    inputs["integrate"] = true;
    inputs["periods"] = a.periods;
    inputs["dt_div"] = a.dt_div;
  }
  inputs["tol"] = a.common.tol;

  Json j = envelope("verify", std::move(inputs), report_json(rep));
  elp::cli::write_payload(a.common.out, elp::cli::dump_json(j));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Collinear circular three-body solutions, Lagrange points, and the six "
      "equilibrium points of a massless fourth body"};
  app.require_subcommand(1);

  FamilyArgs family;
  auto* sub_family = app.add_subcommand(
      "family", "sweep the family curve r3 = f(r2), CSV or JSON");
  sub_family->add_option("--r2-min", family.r2_min, "lower end of the sweep");
  sub_family->add_option("--r2-max", family.r2_max, "upper end of the sweep")
      ->required();
  sub_family->add_option("--samples", family.samples, "number of rows");
  sub_family->add_option("--format", family.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_common(sub_family, family.common);
  sub_family->callback([&family] { run_family(family); });

  EsArgs es;
  auto* sub_es =
      app.add_subcommand("es", "construct the solution for (r2, m3), JSON");
  sub_es->add_option("--r2", es.r2, "radius of body 2")->required();
  sub_es->add_option("--m3", es.m3, "mass of body 3")->required();
  add_common(sub_es, es.common);
  sub_es->callback([&es] { run_es(es); });

  LagrangeArgs lagrange;
  auto* sub_lagrange = app.add_subcommand(
      "lagrange", "the five Lagrange points of the two-primary system, JSON");
  sub_lagrange->add_option("--x", lagrange.x, "radius of the second primary")
      ->required();
  add_common(sub_lagrange, lagrange.common);
  sub_lagrange->callback([&lagrange] { run_lagrange(lagrange); });

  ElArgs el;
  auto* sub_el = app.add_subcommand(
      "el", "all six equilibrium points of the solution (r2, m3), JSON");
  sub_el->add_option("--r2", el.r2, "radius of body 2")->required();
  sub_el->add_option("--m3", el.m3, "mass of body 3")->required();
  add_common(sub_el, el.common);
  sub_el->callback([&el] { run_el(el); });

  CurveArgs curve;
  auto* sub_curve =
      app.add_subcommand("curve", "trace the q3 = q4 locus, CSV");
  sub_curve->add_option("--r2", curve.r2, "radius of body 2")->required();
  sub_curve->add_option("--step", curve.step, "arc-length step of the trace");
  add_common(sub_curve, curve.common);
  sub_curve->callback([&curve] { run_curve(curve); });

  ParamArgs param;
  auto* sub_param = app.add_subcommand(
      "param", "the radical-branch parametrization of the family curve, CSV");
  sub_param->add_option("--w", param.w, "single parameter value")
      ->each([&param](const std::string&) { param.w_given = true; });
  sub_param->add_option("--w-min", param.w_min, "sweep start");
  sub_param->add_option("--w-max", param.w_max, "sweep end")
      ->each([&param](const std::string&) { param.w_max_given = true; });
  sub_param->add_option("--samples", param.samples, "number of rows");
  add_common(sub_param, param.common);
  sub_param->callback([&param] { run_param(param); });

  VerifyArgs verify;
  auto* sub_verify = app.add_subcommand(
      "verify", "equation residuals and optional integration drift, JSON");
  sub_verify->add_option("--r2", verify.r2, "radius of body 2")
      ->each([&verify](const std::string&) { verify.r2_given = true; });
  sub_verify->add_option("--m3", verify.m3, "mass of body 3")
      ->each([&verify](const std::string&) { verify.m3_given = true; });
  sub_verify->add_option("--from-json", verify.from_json,
                         "reuse a solution emitted by the es subcommand");
  sub_verify->add_option("--r4", verify.r4, "probe point, first coordinate")
      ->each([&verify](const std::string&) { verify.r4_given = true; });
  sub_verify->add_option("--r5", verify.r5, "probe point, second coordinate")
      ->each([&verify](const std::string&) { verify.r5_given = true; });
  sub_verify->add_flag("--integrate", verify.integrate,
                       "run the fixed-step integrator and report drift");
  sub_verify->add_option("--periods", verify.periods, "number of periods");
  sub_verify->add_option("--dt-div", verify.dt_div, "steps per period");
  add_common(sub_verify, verify.common);
  sub_verify->callback([&verify] { run_verify(verify); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "elp: " << e.what() << "\n";
    return 2;
  } catch (const elp::Error& e) {
    std::cerr << "elp: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "elp: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
