// sweep.hpp
// Parameter sweeps over (c1, c2, c3) x T x side, rendered as deterministic CSV.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "unruh_min/correlations.hpp"
#include "unruh_min/dynamics.hpp"
#include "unruh_min/errors.hpp"
#include "unruh_min/states.hpp"
#include "unruh_min/unruh.hpp"

namespace unruh_min {

/// Oracle disagreement beyond the stated tolerance.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kChannelOracleTol = 1e-12;
inline constexpr double kMinOracleTol = 1e-8;

/// Number rendering shared by CSV and JSON output: 12 significant digits.
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// A list of sample values, parsed from "v", "start:stop:count" or "v1,v2,...".
struct Axis {
  std::string text;
  std::vector<double> values;

  static Axis parse(std::string_view text, bool log_spaced = false) {
    auto number = [&](std::string_view s) {
      const std::string str(s);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(str, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != str.size())
        throw InvalidInput("cannot parse '" + str + "' as a number in axis '" + std::string(text) + "'");
      return v;
    };
    Axis a{std::string(text), {}};
    if (text.empty()) throw InvalidInput("empty axis specification");
    if (const auto c1 = text.find(':'); c1 != std::string_view::npos) {
      const auto c2 = text.find(':', c1 + 1);
      if (c2 == std::string_view::npos) throw InvalidInput("axis range must be start:stop:count");
      const double start = number(text.substr(0, c1));
      const double stop = number(text.substr(c1 + 1, c2 - c1 - 1));
      const double cnt = number(text.substr(c2 + 1));
      if (cnt < 1 || cnt != std::floor(cnt) || cnt > 1e7) throw InvalidInput("axis count must be a positive integer");
      const auto count = static_cast<std::size_t>(cnt);
      if (log_spaced) {
        if (!(start > 0.0) || !(stop > 0.0)) throw InvalidInput("log-spaced axis needs positive bounds");
        a.values = log_grid(std::min(start, stop), std::max(start, stop), count);
        if (start > stop) std::reverse(a.values.begin(), a.values.end());
      } else {
        a.values.resize(count);
        for (std::size_t i = 0; i < count; ++i)
          a.values[i] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
        if (count > 1) a.values.back() = stop;
      }
    } else {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        a.values.push_back(number(piece));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
    return a;
  }
};

enum class SweepSide { AI, AII, SUM };

inline const char* to_string(SweepSide s) {
  switch (s) {
    case SweepSide::AI: return "AI";
    case SweepSide::AII: return "AII";
    case SweepSide::SUM: return "SUM";
  }
  return "?";
}

inline SweepSide parse_sweep_side(std::string_view s) {
  if (s == "AI") return SweepSide::AI;
  if (s == "AII") return SweepSide::AII;
  if (s == "SUM") return SweepSide::SUM;
  throw InvalidInput("unknown side '" + std::string(s) + "' (expected AI, AII or SUM)");
}

struct Measures {
  bool min = true;
  bool discord = true;
  bool bmax = true;
};

struct SweepSpec {
  std::string preset;            // empty for ad-hoc sweeps
  std::optional<Axis> werner;    // if set, points are (a, -a, a) and c1..c3 are ignored
  Axis c1 = Axis::parse("1");
  Axis c2 = Axis::parse("0.9");
  Axis c3 = Axis::parse("0.9");
  bool c3_tracks_min = false;    // c3 := min(|c1|, |c2|)
  double w = 1.0;
  Axis temperature = Axis::parse("0.01:100:201", true);
  bool log_temperature = true;
  std::vector<SweepSide> sides{SweepSide::AI};
  Measures measures;
  bool oracle = false;
  bool allow_unphysical = false;
  VariationalOptions variational;
};

/// One CSV line. Empty optionals render as empty cells.
struct SweepRow {
  double c1 = 0, c2 = 0, c3 = 0, w = 0, T = 0;
  SweepSide side = SweepSide::AI;
  std::optional<double> N, D, Bmax;
  std::string regime;
  std::optional<double> t_sc;
  std::string method;
  std::optional<double> oracle_delta;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double max_channel_delta = 0.0;
  double max_oracle_delta = 0.0;
  std::size_t skipped = 0;

  bool oracle_ok() const { return max_channel_delta <= kChannelOracleTol && max_oracle_delta <= kMinOracleTol; }
};

/// Triple to evaluate for the requested coefficients.
///
/// A literally physical triple is used as given. Otherwise the magnitudes are
/// tried under each sign pattern, starting with (+, -, +); all outputs depend
/// on c_i^2 only, so the choice changes nothing but positivity. When no
/// pattern is physical the literal triple is returned (is_physical() false).
inline XStateParams resolve_signs(double c1, double c2, double c3) {
  const auto literal = XStateParams::coefficients(c1, c2, c3);
  if (literal.is_physical()) return literal;
  static constexpr std::array<std::array<int, 3>, 8> patterns{{{1, -1, 1},
                                                               {-1, 1, 1},
                                                               {1, 1, -1},
                                                               {-1, -1, -1},
                                                               {1, 1, 1},
                                                               {-1, -1, 1},
                                                               {-1, 1, -1},
                                                               {1, -1, -1}}};
  const double a = std::abs(c1), b = std::abs(c2), c = std::abs(c3);
  for (const auto& s : patterns) {
    const auto p = XStateParams::coefficients(s[0] * a, s[1] * b, s[2] * c);
    if (p.is_physical()) return p;
  }
  return literal;
}

namespace detail {

inline std::vector<std::array<double, 3>> coefficient_points(const SweepSpec& spec) {
  std::vector<std::array<double, 3>> pts;
  if (spec.werner) {
    for (double a : spec.werner->values) pts.push_back({a, -a, a});
    return pts;
  }
  for (double a : spec.c1.values)
    for (double b : spec.c2.values) {
      if (spec.c3_tracks_min) {
        pts.push_back({a, b, std::min(std::abs(a), std::abs(b))});
        continue;
      }
      for (double c : spec.c3.values) pts.push_back({a, b, c});
    }
  return pts;
}

struct RowTask {
  XStateParams params;
  double T;
  SweepSide side;
};

struct RowOutcome {
  SweepRow row;
  double channel_delta = 0.0;
};

inline RowOutcome compute_row(const SweepSpec& spec, const RowTask& task) {
  const XStateParams& p = task.params;
  const UnruhPoint u = UnruhPoint::make(spec.w, task.T);
  RowOutcome out;
  SweepRow& r = out.row;
  r.c1 = p.c1();
  r.c2 = p.c2();
  r.c3 = p.c3();
  r.w = spec.w;
  r.T = task.T;
  r.side = task.side;

  if (!p.is_physical() && !spec.allow_unphysical) {
    r.method = "skipped:unphysical";
    return out;
  }
  r.method = p.is_physical() ? "closed_form" : "formal";

  if (task.side == SweepSide::SUM) {
    const SumResult s = sum_min(p, u);
    if (spec.measures.min) r.N = s.value;
    r.regime = s.label.name();
    r.t_sc = s.label.t_sc;
    return out;
  }

  const Side side = task.side == SweepSide::AI ? Side::AI : Side::AII;
  const BlochForm b = closed_form(p, u, side);
  const CorrelationReport rep = analyze(b);
  const double n = min_side(p, u, side);
  if (spec.measures.min) r.N = n;
  if (spec.measures.discord) r.D = rep.D;
  if (spec.measures.bmax) r.Bmax = rep.Bmax;
  const RegimeLabel label = classify(p, side, spec.w);
  r.regime = label.name();
  r.t_sc = label.t_sc;

  if (spec.oracle && p.is_physical()) {
    const DensityMatrix<4> rho = reduce(build_tripartite(p, u), side);
    out.channel_delta = bloch_decompose(rho).max_abs_diff(b);
    r.oracle_delta = std::abs(min_variational(rho, spec.variational) - n);
  }
  return out;
}

}  // namespace detail

/// Evaluate every (point, T, side) combination with `jobs` worker threads.
/// Row order is fixed by the sort key, so output does not depend on `jobs`.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned jobs = 1) {
  if (spec.sides.empty()) throw InvalidInput("sweep needs at least one side");
  if (!(spec.w > 0.0) || !std::isfinite(spec.w)) throw InvalidInput("w must be positive and finite");
  if (spec.temperature.values.empty()) throw InvalidInput("empty temperature axis");
  for (double t : spec.temperature.values)
    if (std::isnan(t) || t < 0.0) throw InvalidInput("temperatures must be >= 0");

  std::vector<XStateParams> params;
  std::size_t physical = 0;
  for (const auto& c : detail::coefficient_points(spec)) {
    params.push_back(resolve_signs(c[0], c[1], c[2]));
    physical += params.back().is_physical();
  }
  if (params.empty()) throw InvalidInput("empty coefficient grid");
  if (physical == 0 && !spec.allow_unphysical)
    throw UnphysicalState("no physical (c1, c2, c3) point in the sweep; first: " + params.front().violation());

  std::vector<detail::RowTask> tasks;
  for (SweepSide side : spec.sides)
    for (double t : spec.temperature.values)
      for (const auto& p : params) tasks.push_back({p, t, side});

  std::vector<detail::RowOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) outcomes[i] = detail::compute_row(spec, tasks[i]);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size()))));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  SweepResult res;
  res.rows.reserve(outcomes.size());
  for (auto& o : outcomes) {
    res.max_channel_delta = std::max(res.max_channel_delta, o.channel_delta);
    if (o.row.oracle_delta) res.max_oracle_delta = std::max(res.max_oracle_delta, *o.row.oracle_delta);
    res.skipped += o.row.method == "skipped:unphysical";
    res.rows.push_back(std::move(o.row));
  }
  std::stable_sort(res.rows.begin(), res.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tuple(static_cast<int>(a.side), a.T, a.c1, a.c2, a.c3) <
           std::tuple(static_cast<int>(b.side), b.T, b.c1, b.c2, b.c3);
  });
  return res;
}

inline constexpr std::string_view kCsvHeader = "c1,c2,c3,w,T,side,N,D,Bmax,regime,t_sc,method,oracle_delta";

/// '#' provenance block, header, then one line per row; '\n' line endings.
inline void write_csv(std::ostream& os, const SweepSpec& spec, const SweepResult& res) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  auto yes_no = [](bool b) { return b ? "true" : "false"; };
  std::string sides, measures;
  for (SweepSide s : spec.sides) sides += std::string(sides.empty() ? "" : ",") + to_string(s);
  if (spec.measures.min) measures += "min";
  if (spec.measures.discord) measures += std::string(measures.empty() ? "" : ",") + "discord";
  if (spec.measures.bmax) measures += std::string(measures.empty() ? "" : ",") + "bmax";

  os << "# unruh_min sweep\n";
  os << "# preset=" << (spec.preset.empty() ? "none" : spec.preset) << '\n';
  if (spec.werner) {
    os << "# werner=" << spec.werner->text << " (c = (a, -a, a))\n";
  } else {
    os << "# c1=" << spec.c1.text << '\n';
    os << "# c2=" << spec.c2.text << '\n';
    os << "# c3=" << (spec.c3_tracks_min ? "min(|c1|,|c2|)" : spec.c3.text) << '\n';
  }
  os << "# w=" << format_number(spec.w) << '\n';
  os << "# T=" << spec.temperature.text << " (" << (spec.log_temperature ? "log" : "linear") << ")\n";
  os << "# sides=" << sides << '\n';
  os << "# measures=" << measures << '\n';
  os << "# oracle=" << yes_no(spec.oracle);
  if (spec.oracle)
    os << " (resolution=" << spec.variational.resolution << ", refinement=" << spec.variational.refinement_steps << ")";
  os << '\n';
  os << "# allow_unphysical=" << yes_no(spec.allow_unphysical) << '\n';
  os << "# sign_policy=literal if physical, else first physical of (+,-,+),(-,+,+),(+,+,-),(-,-,-),...\n";
  os << "# rows=" << res.rows.size() << " skipped=" << res.skipped << '\n';
  os << kCsvHeader << '\n';
  for (const SweepRow& r : res.rows) {
    os << format_number(r.c1) << ',' << format_number(r.c2) << ',' << format_number(r.c3) << ','
       << format_number(r.w) << ',' << format_number(r.T) << ',' << to_string(r.side) << ',' << opt(r.N) << ','
       << opt(r.D) << ',' << opt(r.Bmax) << ',' << r.regime << ',' << opt(r.t_sc) << ',' << r.method << ','
       << opt(r.oracle_delta) << '\n';
  }
}

inline std::string to_csv(const SweepSpec& spec, const SweepResult& res) {
  std::ostringstream os;
  write_csv(os, spec, res);
  return os.str();
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig1-red",  "fig1-blue", "fig2",     "fig3",      "fig4",
                                              "fig5",      "fig6-red",  "fig6-blue", "fig7",     "fig8-red",
                                              "fig8-blue", "fig8-yellow"};
  return names;
}

/// Sweeps that regenerate the data behind each figure. Caption parameter
/// sets that no sign pattern makes positive run with allow_unphysical.
inline SweepSpec preset(std::string_view name) {
  SweepSpec s;
  s.preset = std::string(name);
  auto coeffs = [&](const char* a, const char* b, const char* c) {
    s.c1 = Axis::parse(a);
    s.c2 = Axis::parse(b);
    s.c3 = Axis::parse(c);
  };
  auto only = [&](std::initializer_list<SweepSide> sides) { s.sides = sides; };

  // |c3| <= |c1|, |c2| captions use |c3| = 0.9: the curves do not depend on it, and (1, -0.9, 0.9) is physical.
  if (name == "fig1-red") {
    coeffs("1", "0.9", "0.9");
  } else if (name == "fig1-blue") {
    coeffs("0.9", "0.85", "1");
    s.allow_unphysical = true;
  } else if (name == "fig2" || name == "fig7") {
    // T_sc against c1 with |c1| <= |c2| and c3 = 0.9, read from the t_sc column.
    coeffs(name == "fig2" ? "0.64:0.89:26" : "0.01:0.63:63", "1", "0.9");
    s.temperature = Axis::parse("1");
    s.log_temperature = false;
    only({name == "fig2" ? SweepSide::AI : SweepSide::AII});
    s.allow_unphysical = true;
  } else if (name == "fig3") {
    coeffs("0:1:21", "0:1:21", "0");
    s.c3_tracks_min = true;
    s.temperature = Axis::parse("0.1,1,20");
    s.log_temperature = false;
  } else if (name == "fig4" || name == "fig5") {
    s.werner = Axis::parse("0:1:11");
    s.temperature = Axis::parse("0.01:100:101", true);
    s.measures = name == "fig4" ? Measures{true, false, true} : Measures{true, true, false};
  } else if (name == "fig6-red") {
    coeffs("1", "0.9", "0.9");
    only({SweepSide::AII});
  } else if (name == "fig6-blue") {
    coeffs("0.9", "0.55", "1");
    only({SweepSide::AII});
    s.allow_unphysical = true;
  } else if (name == "fig8-red") {
    coeffs("1", "0.9", "0.9");
    only({SweepSide::SUM});
  } else if (name == "fig8-blue") {
    coeffs("0.9", "0.85", "1");
    only({SweepSide::SUM});
    s.allow_unphysical = true;
  } else if (name == "fig8-yellow") {
    coeffs("0.9", "0.5", "1");
    only({SweepSide::SUM});
    s.allow_unphysical = true;
  } else {
    throw InvalidInput("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

}  // namespace unruh_min
