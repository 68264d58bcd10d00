// unruh_min: point reports, sweeps, sudden-change queries and self-verification.
//
// Exit status: 0 ok, 1 usage, 2 unphysical input, 3 verification failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unruh_min/unruh_min.hpp"

namespace {

using namespace unruh_min;
using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitUnphysical = 2;
constexpr int kExitVerification = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) return out;
    pos = next + 1;
  }
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidInput("cannot parse " + what + " '" + s + "'");
  return v;
}

std::array<double, 3> parse_triple(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw InvalidInput("--c expects three comma-separated values, got '" + s + "'");
  return {parse_double(parts[0], "c1"), parse_double(parts[1], "c2"), parse_double(parts[2], "c3")};
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

struct PointArgs {
  std::string c;
  double w = 1.0;
  std::string T;
  std::string side = "AI";
  bool formal = false;
  bool oracle = false;
  int resolution = VariationalOptions{}.resolution;
};

int cmd_point(const PointArgs& a) {
  const auto c = parse_triple(a.c);
  const XStateParams p = XStateParams::coefficients(c[0], c[1], c[2]);
  if (!p.is_physical() && !a.formal) throw UnphysicalState(p.violation());
  const UnruhPoint u = UnruhPoint::make(a.w, parse_double(a.T, "T"));
  const SweepSide side = parse_sweep_side(a.side);

  Json j;
  j["command"] = "point";
  j["c"] = {p.c1(), p.c2(), p.c3()};
  j["w"] = u.w();
  j["T"] = number(u.temperature());
  j["acceleration"] = number(u.acceleration());
  j["side"] = to_string(side);
  j["physical"] = p.is_physical();
  j["method"] = p.is_physical() ? "closed_form" : "formal";

  if (side == SweepSide::SUM) {
    const SumResult s = sum_min(p, u);
    j["N"] = s.value;
    j["N_AI"] = min_AI(p, u);
    j["N_AII"] = min_AII(p, u);
    j["regime"] = s.label.name();
    j["t_sc"] = optional_number(s.label.t_sc);
    j["asymptote"] = 2 * asymptote(p);
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  const Side s = side == SweepSide::AI ? Side::AI : Side::AII;
  const BlochForm b = closed_form(p, u, s);
  const CorrelationReport rep = analyze(b);
  const RegimeLabel label = classify(p, s, u.w());
  j["N"] = min_side(p, u, s);
  j["D"] = rep.D;
  j["Bmax"] = rep.Bmax;
  j["branch"] = to_string(rep.branch);
  j["degenerate"] = rep.degenerate;
  j["regime"] = label.name();
  j["t_sc"] = optional_number(label.t_sc);
  j["asymptote"] = asymptote(p);

  int status = 0;
  if (a.oracle) {
    if (!p.is_physical()) throw UnphysicalState("--oracle needs a physical state: " + p.violation());
    const DensityMatrix<4> rho = reduce(build_tripartite(p, u), s);
    const double channel = bloch_decompose(rho).max_abs_diff(b);
    const double variational = min_variational(rho, {a.resolution, VariationalOptions{}.refinement_steps});
    const double delta = std::abs(variational - min_side(p, u, s));
    j["oracle"] = {{"channel_delta", channel},
                   {"channel_tolerance", kChannelOracleTol},
                   {"N_variational", variational},
                   {"min_delta", delta},
                   {"min_tolerance", kMinOracleTol}};
    if (channel > kChannelOracleTol || delta > kMinOracleTol) status = kExitVerification;
  }
  std::cout << j.dump(2) << '\n';
  if (status) std::cerr << "error: oracle disagreement beyond tolerance\n";
  return status;
}

struct TscArgs {
  std::string c;
  double w = 1.0;
  std::string side = "AI";
};

int cmd_tsc(const TscArgs& a) {
  const auto c = parse_triple(a.c);
  const XStateParams p = XStateParams::coefficients(c[0], c[1], c[2]);
  if (!(a.w > 0.0) || !std::isfinite(a.w)) throw InvalidInput("w must be positive and finite");
  const SweepSide side = parse_sweep_side(a.side);
  if (!p.is_physical()) std::cerr << "note: " << p.violation() << " (formal evaluation)\n";

  std::optional<double> t;
  std::string regime;
  if (side == SweepSide::SUM) {
    const SumLabel label = classify_sum(p, a.w);
    regime = label.name();
    t = label.t_sc;
    std::cout << "side: SUM\nregime: " << regime << '\n';
  } else {
    const RegimeLabel label = classify(p, side == SweepSide::AI ? Side::AI : Side::AII, a.w);
    regime = label.name();
    t = label.t_sc;
    std::cout << "side: " << to_string(side) << "\nregime: " << regime << '\n';
    if (label.regime == RegimeCase::I) std::cout << "case i, no sudden change\n";
    if (label.regime == RegimeCase::III) std::cout << "case iii, no sudden change\n";
    if (label.regime == RegimeCase::IISmooth) std::cout << "case ii, no sudden change on this side\n";
  }
  if (t) std::cout << "t_sc: " << format_number(*t) << '\n';
  return 0;
}

struct SweepArgs {
  std::string config, preset, c1, c2, c3, werner, T, T_scale, sides, measures, out = "-";
  double w = 1.0;
  bool oracle = false;
  bool allow_unphysical = false;
  unsigned jobs = 1;
  int resolution = VariationalOptions{}.resolution;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

/// key=value lines ('#' comments) fill options not given on the command line.
void apply_config(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file '" + path + "'");
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "config") throw InvalidInput(path + ":" + std::to_string(lineno) + ": nested config");
    CLI::Option* opt = nullptr;
    try {
      opt = sub.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw InvalidInput(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

SweepSpec build_spec(const SweepArgs& a, const CLI::App& sub) {
  auto given = [&](const char* name) { return sub.get_option(name)->count() > 0; };
  SweepSpec spec = a.preset.empty() ? SweepSpec{} : preset(a.preset);

  if (given("--T-scale")) {
    if (a.T_scale != "log" && a.T_scale != "linear") throw InvalidInput("--T-scale must be log or linear");
    spec.log_temperature = a.T_scale == "log";
  }
  if (given("--T") || given("--T-scale"))
    spec.temperature = Axis::parse(given("--T") ? a.T : spec.temperature.text, spec.log_temperature);

  if (given("--werner")) {
    spec.werner = Axis::parse(a.werner);
  } else if (given("--c1") || given("--c2") || given("--c3")) {
    spec.werner.reset();
  }
  if (given("--c1")) spec.c1 = Axis::parse(a.c1);
  if (given("--c2")) spec.c2 = Axis::parse(a.c2);
  if (given("--c3")) {
    spec.c3_tracks_min = a.c3 == "min";
    if (!spec.c3_tracks_min) spec.c3 = Axis::parse(a.c3);
  }
  if (given("--w")) spec.w = a.w;
  if (given("--sides")) {
    spec.sides.clear();
    for (const auto& s : split(a.sides, ',')) spec.sides.push_back(parse_sweep_side(s));
  }
  if (given("--measures")) {
    spec.measures = Measures{false, false, false};
    for (const auto& m : split(a.measures, ',')) {
      if (m == "min") spec.measures.min = true;
      else if (m == "discord") spec.measures.discord = true;
      else if (m == "bmax") spec.measures.bmax = true;
      else throw InvalidInput("unknown measure '" + m + "' (expected min, discord or bmax)");
    }
  }
  if (given("--oracle")) spec.oracle = a.oracle;
  if (given("--allow-unphysical")) spec.allow_unphysical = a.allow_unphysical;
  spec.variational.resolution = a.resolution;
  return spec;
}

int cmd_sweep(const SweepArgs& a, CLI::App& sub) {
  if (!a.config.empty()) apply_config(sub, a.config);
  const SweepSpec spec = build_spec(a, sub);
  const SweepResult res = run_sweep(spec, a.jobs);
  const std::string csv = to_csv(spec, res);
  if (a.out == "-") {
    std::cout << csv;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + a.out + "' for writing");
    f << csv;
    if (!f.flush()) throw std::runtime_error("write to '" + a.out + "' failed");
  }
  if (spec.oracle && !res.oracle_ok()) {
    std::cerr << "error: oracle disagreement beyond tolerance (channel " << format_number(res.max_channel_delta)
              << ", MIN " << format_number(res.max_oracle_delta) << ")\n";
    return kExitVerification;
  }
  return 0;
}

struct VerifyArgs {
  std::uint64_t seed = 20240607;
  std::size_t draws = 200;
  int resolution = VariationalOptions{}.resolution;
};

int cmd_verify(const VerifyArgs& a) {
  const VerifyReport rep = run_verify(a.seed, a.draws, {a.resolution, VariationalOptions{}.refinement_steps});
  Json j;
  j["command"] = "verify";
  j["seed"] = rep.seed;
  j["draws"] = rep.draws;
  j["passed"] = rep.passed();
  Json suites = Json::array();
  for (const SuiteResult& s : rep.suites)
    suites.push_back({{"name", s.name},
                      {"description", s.description},
                      {"checks", s.checks},
                      {"max_deviation", s.max_deviation},
                      {"tolerance", s.tolerance},
                      {"passed", s.passed()}});
  j["suites"] = suites;
  std::cout << j.dump(2) << '\n';
  return rep.passed() ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIN, geometric discord and Bell-CHSH under the fermionic Unruh channel", "unruh_min"};
  app.require_subcommand(1);

  PointArgs pa;
  auto* point = app.add_subcommand("point", "Single-point report as JSON");
  point->add_option("--c", pa.c, "c1,c2,c3 (use --c=-1,... for a leading minus)")->required();
  point->add_option("--w", pa.w, "Mode frequency")->capture_default_str();
  point->add_option("--T", pa.T, "Unruh temperature (0 and inf allowed)")->required();
  point->add_option("--side", pa.side, "AI, AII or SUM")->capture_default_str();
  point->add_flag("--formal", pa.formal, "Evaluate closed forms for a non-positive triple");
  point->add_flag("--oracle", pa.oracle, "Also run the partial-trace and variational oracles");
  point->add_option("--resolution", pa.resolution, "Sphere points for the variational oracle")->capture_default_str();

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep as CSV");
  sweep->add_option("--config", sa.config, "key=value file; command-line flags take precedence");
  sweep->add_option("--preset", sa.preset, "Figure preset")->check(CLI::IsMember(preset_names()));
  sweep->add_option("--c1", sa.c1, "Value, start:stop:count or v1,v2,...");
  sweep->add_option("--c2", sa.c2, "Value, start:stop:count or v1,v2,...");
  sweep->add_option("--c3", sa.c3, "Value, range, list, or 'min' for min(|c1|,|c2|)");
  sweep->add_option("--werner", sa.werner, "Werner parameter axis; c = (a, -a, a)");
  sweep->add_option("--w", sa.w, "Mode frequency")->capture_default_str();
  sweep->add_option("--T", sa.T, "Temperature axis");
  sweep->add_option("--T-scale", sa.T_scale, "log or linear spacing for a T range");
  sweep->add_option("--sides", sa.sides, "Comma list of AI, AII, SUM");
  sweep->add_option("--measures", sa.measures, "Comma list of min, discord, bmax");
  sweep->add_flag("--oracle", sa.oracle, "Attach oracle deltas to every row");
  sweep->add_flag("--allow-unphysical", sa.allow_unphysical, "Evaluate non-positive triples formally");
  sweep->add_option("--jobs", sa.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  sweep->add_option("--resolution", sa.resolution, "Sphere points for the variational oracle")->capture_default_str();
  sweep->add_option("--out", sa.out, "Output path, '-' for stdout")->capture_default_str();

  TscArgs ta;
  auto* tsc = app.add_subcommand("tsc", "Regime label and sudden-change temperature");
  tsc->add_option("--c", ta.c, "c1,c2,c3")->required();
  tsc->add_option("--w", ta.w, "Mode frequency")->capture_default_str();
  tsc->add_option("--side", ta.side, "AI, AII or SUM")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Seeded oracle suites; JSON report");
  verify->add_option("--seed", va.seed, "RNG seed")->capture_default_str();
  verify->add_option("--draws", va.draws, "Random parameter draws")->capture_default_str();
  verify->add_option("--resolution", va.resolution, "Sphere points for the variational oracle")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*point) return cmd_point(pa);
    if (*sweep) return cmd_sweep(sa, *sweep);
    if (*tsc) return cmd_tsc(ta);
    if (*verify) return cmd_verify(va);
  } catch (const UnphysicalState& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnphysical;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
