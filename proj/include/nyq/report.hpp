#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "nyq/classifier.hpp"
#include "nyq/global_features.hpp"
#include "nyq/parser.hpp"
#include "nyq/taylor.hpp"

// QualitativeReport: everything the analysis produces for one transfer
// function, plus JSON serialization. Exact rationals are written as strings
// ("27/16") next to a float mirror; readers use only the exact form and
// ignore fields they do not know.

namespace nyq {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "nyq";
inline constexpr const char* kToolVersion = "0.1.0";

struct Notice {
  std::string code;
  std::string message;
  /// Degenerate inputs make --strict fail.
  bool degenerate = false;

  friend bool operator==(const Notice&, const Notice&) = default;
};

struct ReportTangents {
  std::complex<double> start;
  std::complex<double> end;
  double start_omega = 0.0;
  double end_omega = 0.0;
  std::optional<std::complex<double>> predicted_start;
  std::optional<std::complex<double>> predicted_end;

  friend bool operator==(const ReportTangents&, const ReportTangents&) = default;
};

struct ReportMetadata {
  std::string tool = kToolName;
  std::string version = kToolVersion;

  friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

struct QualitativeReport {
  int schema_version = kSchemaVersion;
  ReportMetadata metadata;
  TransferFunction tf{Polynomial{Scalar(1)}, Polynomial{Scalar(1)}};
  EndpointSummary start;
  EndpointSummary end;
  std::size_t order = 0;
  std::vector<Scalar> taylor;
  std::vector<Scalar> delta_tau;  // index 0 unused
  std::vector<Scalar> dual_taylor;
  std::vector<Scalar> dual_delta_tau;
  EndpointBehavior exit;
  EndpointBehavior entry;
  LiftedBehavior lifted_exit;
  LiftedBehavior lifted_entry;
  bool crossings_degenerate = false;
  std::vector<AxisCrossing> crossings;
  std::vector<double> axis_poles;
  std::optional<Asymptote> asymptote;
  std::optional<ReportTangents> tangents;
  std::vector<Notice> notices;

  [[nodiscard]] bool has_degenerate_notice() const {
    for (const auto& n : notices)
      if (n.degenerate) return true;
    return false;
  }
};

struct ReportOptions {
  std::optional<std::size_t> order;
  TangentOptions tangents;
};

inline bool is_constant_function(const TransferFunction& tf) {
  return tf.origin_poles() == 0 && tf.num().degree() == 0 && tf.den().degree() == 0;
}

inline QualitativeReport build_report(const TransferFunction& tf, const ReportOptions& opt = {}) {
  QualitativeReport r;
  r.tf = tf;
  std::tie(r.start, r.end) = endpoints(tf);
  r.order = opt.order.value_or(default_truncation_order(tf));

  const auto series = delta_tau_series(tf.core(), r.order);
  const auto dual = delta_tau_series(dualize(tf.core()).core(), r.order);
  for (std::size_t k = 0; k <= r.order; ++k) {
    r.taylor.push_back(series.taylor.at(k));
    r.dual_taylor.push_back(dual.taylor.at(k));
  }
  r.delta_tau = series.values;
  r.dual_delta_tau = dual.values;

  r.exit = classify_exit(tf, r.order);
  r.entry = classify_entry(tf, r.order);
  r.lifted_exit = lift_to_gbar(r.exit, tf);
  r.lifted_entry = lift_to_gbar(r.entry, tf);

  if (reduced_crossing_polynomial(tf).is_zero()) {
    r.crossings_degenerate = true;
  } else {
    r.crossings = real_axis_crossings(tf);
  }
  r.axis_poles = imaginary_axis_poles(tf);
  r.asymptote = asymptote_abscissa(tf);

  if (is_constant_function(tf)) {
    r.notices.push_back({"constant_function", "constant function: the plot is a single point", true});
  } else {
    const auto [s, e] = tangent_vectors(tf, opt.tangents);
    r.tangents = ReportTangents{s.direction, e.direction, opt.tangents.start_omega, opt.tangents.end_omega,
                                predicted_tangent(r.exit, tf), predicted_tangent(r.entry, tf)};
    if (series.degenerate_imag)
      r.notices.push_back({"real_response", "G(jw) is real for every w: no phase lead or lag at either end", true});
    if (series.degenerate_modulus)
      r.notices.push_back({"constant_modulus", "|G(jw)| is constant: modulus trends are reported as constant", true});
  }
  if (!r.axis_poles.empty())
    r.notices.push_back({"imaginary_axis_poles", "poles on the imaginary axis: the plot diverges at finite w", false});
  for (const auto* b : {&r.exit, &r.entry}) {
    if (b->modulus_borderline && !b->degenerate_modulus) {
      r.notices.push_back({b->end == Endpoint::Start ? "modulus_borderline_start" : "modulus_borderline_end",
                           "first odd index k satisfies 2k <= h: the modulus verdict is the trend of the real part",
                           false});
    }
  }
  return r;
}

// ---- enum names -----------------------------------------------------------

inline const char* to_name(Endpoint e) { return e == Endpoint::Start ? "start" : "end"; }

inline const char* to_name(ModulusKind k) {
  switch (k) {
    case ModulusKind::Zero: return "zero";
    case ModulusKind::Finite: return "finite";
    case ModulusKind::Infinite: return "infinite";
  }
  return "";
}

inline const char* to_name(PhaseSense p) {
  switch (p) {
    case PhaseSense::Lead: return "lead";
    case PhaseSense::Lag: return "lag";
    case PhaseSense::OnRealAxis: return "on_real_axis";
  }
  return "";
}

inline const char* to_name(ApproachAxis a) {
  switch (a) {
    case ApproachAxis::PerpendicularToReal: return "perpendicular";
    case ApproachAxis::ParallelToReal: return "parallel";
    case ApproachAxis::Degenerate: return "degenerate";
  }
  return "";
}

inline const char* to_name(RotationSense r) {
  switch (r) {
    case RotationSense::CounterClockwise: return "counter_clockwise";
    case RotationSense::Clockwise: return "clockwise";
    case RotationSense::None: return "none";
  }
  return "";
}

/// Increasing reads "increasing from M0" at the start and "approach from
/// above" at the end.
inline const char* to_name(ModulusTrend t, Endpoint end) {
  switch (t) {
    case ModulusTrend::Increasing: return end == Endpoint::Start ? "increasing_from_m0" : "approach_from_above";
    case ModulusTrend::Decreasing: return end == Endpoint::Start ? "decreasing_from_m0" : "approach_from_below";
    case ModulusTrend::Constant: return "constant";
    case ModulusTrend::Undetermined: return "undetermined";
    case ModulusTrend::DominatedByOriginPoles: return "dominated_by_origin_poles";
  }
  return "";
}

namespace detail {

template <class E, std::size_t N>
E from_name(const std::string& s, const std::pair<const char*, E> (&table)[N]) {
  for (const auto& [name, value] : table)
    if (s == name) return value;
  throw std::invalid_argument("unknown name '" + s + "'");
}

inline Endpoint endpoint_from(const std::string& s) {
  static const std::pair<const char*, Endpoint> t[] = {{"start", Endpoint::Start}, {"end", Endpoint::End}};
  return from_name(s, t);
}

inline ModulusKind modulus_kind_from(const std::string& s) {
  static const std::pair<const char*, ModulusKind> t[] = {
      {"zero", ModulusKind::Zero}, {"finite", ModulusKind::Finite}, {"infinite", ModulusKind::Infinite}};
  return from_name(s, t);
}

inline PhaseSense phase_sense_from(const std::string& s) {
  static const std::pair<const char*, PhaseSense> t[] = {
      {"lead", PhaseSense::Lead}, {"lag", PhaseSense::Lag}, {"on_real_axis", PhaseSense::OnRealAxis}};
  return from_name(s, t);
}

inline ApproachAxis approach_axis_from(const std::string& s) {
  static const std::pair<const char*, ApproachAxis> t[] = {{"perpendicular", ApproachAxis::PerpendicularToReal},
                                                           {"parallel", ApproachAxis::ParallelToReal},
                                                           {"degenerate", ApproachAxis::Degenerate}};
  return from_name(s, t);
}

inline RotationSense rotation_from(const std::string& s) {
  static const std::pair<const char*, RotationSense> t[] = {{"counter_clockwise", RotationSense::CounterClockwise},
                                                            {"clockwise", RotationSense::Clockwise},
                                                            {"none", RotationSense::None}};
  return from_name(s, t);
}

inline ModulusTrend modulus_trend_from(const std::string& s) {
  static const std::pair<const char*, ModulusTrend> t[] = {{"increasing_from_m0", ModulusTrend::Increasing},
                                                           {"approach_from_above", ModulusTrend::Increasing},
                                                           {"decreasing_from_m0", ModulusTrend::Decreasing},
                                                           {"approach_from_below", ModulusTrend::Decreasing},
                                                           {"constant", ModulusTrend::Constant},
                                                           {"undetermined", ModulusTrend::Undetermined},
                                                           {"dominated_by_origin_poles", ModulusTrend::DominatedByOriginPoles}};
  return from_name(s, t);
}

inline json rational(const Scalar& v) { return json{{"exact", to_string(v)}, {"float", to_double(v)}}; }

inline Scalar rational_from(const json& j) {
  if (j.is_object()) return parse_scalar(j.at("exact").get<std::string>());
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw std::invalid_argument("expected a rational");
}

template <class T>
json optional_rational(const std::optional<T>& v) {
  return v ? rational(*v) : json(nullptr);
}

inline std::optional<Scalar> optional_rational_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return rational_from(j);
}

inline json rational_list(const std::vector<Scalar>& v, std::size_t first = 0) {
  json exact = json::array();
  json floats = json::array();
  for (std::size_t i = first; i < v.size(); ++i) {
    exact.push_back(to_string(v[i]));
    floats.push_back(to_double(v[i]));
  }
  return json{{"first_index", first}, {"exact", exact}, {"float", floats}};
}

inline std::vector<Scalar> rational_list_from(const json& j) {
  std::vector<Scalar> out(j.at("first_index").get<std::size_t>(), Scalar(0));
  for (const auto& e : j.at("exact")) out.push_back(parse_scalar(e.get<std::string>()));
  return out;
}

inline json complex_value(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline std::complex<double> complex_from(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

inline std::vector<std::string> coefficient_strings(const Polynomial& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  return out;
}

inline Polynomial polynomial_from(const json& j) {
  std::vector<Scalar> c;
  // Floats are read through their shortest decimal text, so 0.1 is 1/10.
  for (const auto& e : j) c.push_back(rational_from(e.is_number_float() ? json(e.dump()) : e));
  return Polynomial(std::move(c));
}

}  // namespace detail

// ---- transfer functions -----------------------------------------------------

/// {"gain": "1", "origin_poles": 1, "num": ["35","12","1"], "den": [...]}
/// with ascending coefficients, or {"tf": "<expression>"}.
inline json tf_to_json(const TransferFunction& tf) {
  return json{{"text", format_tf(tf)},
              {"gain", to_string(tf.gain())},
              {"origin_poles", tf.origin_poles()},
              {"num", detail::coefficient_strings(tf.num())},
              {"den", detail::coefficient_strings(tf.den())},
              {"m", tf.m()},
              {"n", tf.n()},
              {"relative_degree", tf.relative_degree()}};
}

inline TransferFunction tf_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("transfer function must be an object");
  if (j.contains("tf")) return parse_tf(j.at("tf").get<std::string>());
  const Scalar gain = j.contains("gain") ? detail::rational_from(j.at("gain")) : Scalar(1);
  const int h = j.value("origin_poles", 0);
  const auto num = detail::polynomial_from(j.at("num"));
  const auto den = detail::polynomial_from(j.at("den"));
  if (den.is_zero()) throw ZeroDenominator();
  if (num.is_zero() || gain == 0) throw ZeroNumerator();
  return TransferFunction(gain, h, num, den);
}

// ---- pieces ---------------------------------------------------------------

inline json to_json(const EndpointSummary& e) {
  return json{{"which_end", to_name(e.which_end)},
              {"modulus_kind", to_name(e.modulus_kind)},
              {"modulus", detail::optional_rational(e.modulus)},
              {"phase_over_pi", detail::rational(e.phase_over_pi)},
              {"g_value", detail::rational(e.g_value)}};
}

inline EndpointSummary endpoint_summary_from(const json& j) {
  EndpointSummary e;
  e.which_end = detail::endpoint_from(j.at("which_end").get<std::string>());
  e.modulus_kind = detail::modulus_kind_from(j.at("modulus_kind").get<std::string>());
  e.modulus = detail::optional_rational_from(j.at("modulus"));
  e.phase_over_pi = detail::rational_from(j.at("phase_over_pi"));
  e.g_value = detail::rational_from(j.at("g_value"));
  return e;
}

inline json to_json(const EndpointBehavior& b) {
  auto opt_index = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); };
  return json{{"end", to_name(b.end)},
              {"phase_sense", to_name(b.phase_sense)},
              {"rotation", to_name(rotation_sense(b))},
              {"modulus_trend", to_name(b.modulus_trend, b.end)},
              {"approach_axis", to_name(b.approach_axis)},
              {"archetype", b.archetype ? json(*b.archetype) : json(nullptr)},
              {"k_odd", opt_index(b.k_odd)},
              {"h_even", opt_index(b.h_even)},
              {"delta_k", detail::optional_rational(b.delta_k)},
              {"delta_h", detail::optional_rational(b.delta_h)},
              {"modulus_borderline", b.modulus_borderline},
              {"degenerate_modulus", b.degenerate_modulus},
              {"rotated_frame", b.rotated_frame}};
}

inline EndpointBehavior endpoint_behavior_from(const json& j) {
  auto opt_index = [](const json& v) -> std::optional<std::size_t> {
    if (v.is_null()) return std::nullopt;
    return v.get<std::size_t>();
  };
  EndpointBehavior b;
  b.end = detail::endpoint_from(j.at("end").get<std::string>());
  b.phase_sense = detail::phase_sense_from(j.at("phase_sense").get<std::string>());
  b.modulus_trend = detail::modulus_trend_from(j.at("modulus_trend").get<std::string>());
  b.approach_axis = detail::approach_axis_from(j.at("approach_axis").get<std::string>());
  if (!j.at("archetype").is_null()) b.archetype = j.at("archetype").get<int>();
  b.k_odd = opt_index(j.at("k_odd"));
  b.h_even = opt_index(j.at("h_even"));
  b.delta_k = detail::optional_rational_from(j.at("delta_k"));
  b.delta_h = detail::optional_rational_from(j.at("delta_h"));
  b.modulus_borderline = j.at("modulus_borderline").get<bool>();
  b.degenerate_modulus = j.at("degenerate_modulus").get<bool>();
  b.rotated_frame = j.at("rotated_frame").get<bool>();
  return b;
}

inline json to_json(const LiftedBehavior& l) {
  return json{{"phase_sense", to_name(l.behavior.phase_sense)},
              {"rotation", to_name(l.rotation)},
              {"modulus_trend", to_name(l.behavior.modulus_trend, l.behavior.end)},
              {"endpoint", to_json(l.endpoint)}};
}

/// The lifted form is a function of the base behavior and the endpoint; it
/// is rebuilt from those on read.
inline LiftedBehavior lifted_from(const json& j, const EndpointBehavior& base) {
  LiftedBehavior l{base, endpoint_summary_from(j.at("endpoint")), detail::rotation_from(j.at("rotation").get<std::string>())};
  l.behavior.modulus_trend = detail::modulus_trend_from(j.at("modulus_trend").get<std::string>());
  l.behavior.phase_sense = detail::phase_sense_from(j.at("phase_sense").get<std::string>());
  return l;
}

inline json to_json(const AxisCrossing& c) {
  return json{{"omega", c.omega},
              {"real_value", c.real_value},
              {"multiplicity_hint", c.multiplicity_hint},
              {"u_interval", json{{"lo", to_string(c.interval.lo)}, {"hi", to_string(c.interval.hi)}, {"exact", c.interval.exact}}}};
}

inline AxisCrossing axis_crossing_from(const json& j) {
  AxisCrossing c;
  c.omega = j.at("omega").get<double>();
  c.real_value = j.at("real_value").get<double>();
  c.multiplicity_hint = j.at("multiplicity_hint").get<int>();
  const auto& iv = j.at("u_interval");
  c.interval.lo = parse_scalar(iv.at("lo").get<std::string>());
  c.interval.hi = parse_scalar(iv.at("hi").get<std::string>());
  c.interval.exact = iv.at("exact").get<bool>();
  c.interval.multiplicity = c.multiplicity_hint;
  return c;
}

// ---- report ---------------------------------------------------------------

inline json to_json(const QualitativeReport& r) {
  json crossings = json::array();
  for (const auto& c : r.crossings) crossings.push_back(to_json(c));
  json notices = json::array();
  for (const auto& n : r.notices) notices.push_back(json{{"code", n.code}, {"message", n.message}, {"degenerate", n.degenerate}});

  json tangents = nullptr;
  if (r.tangents) {
    const auto& t = *r.tangents;
    auto opt_c = [](const std::optional<std::complex<double>>& z) { return z ? detail::complex_value(*z) : json(nullptr); };
    tangents = json{{"start", json{{"omega", t.start_omega}, {"direction", detail::complex_value(t.start)},
                                   {"predicted", opt_c(t.predicted_start)}}},
                    {"end", json{{"omega", t.end_omega}, {"direction", detail::complex_value(t.end)},
                                 {"predicted", opt_c(t.predicted_end)}}}};
  }

  json asymptote = nullptr;
  if (r.asymptote) {
    asymptote = json{{"kind", "vertical_line"}, {"abscissa", detail::rational(r.asymptote->abscissa)}};
  }

  return json{
      {"schema_version", r.schema_version},
      {"input", tf_to_json(r.tf)},
      {"endpoints", json{{"start", to_json(r.start)}, {"end", to_json(r.end)}}},
      {"delta_tables", json{{"order", r.order},
                            {"taylor", detail::rational_list(r.taylor)},
                            {"delta_tau", detail::rational_list(r.delta_tau, 1)},
                            {"dual_taylor", detail::rational_list(r.dual_taylor)},
                            {"dual_delta_tau", detail::rational_list(r.dual_delta_tau, 1)}}},
      {"behaviors", json{{"exit", to_json(r.exit)},
                         {"entry", to_json(r.entry)},
                         {"lifted_exit", to_json(r.lifted_exit)},
                         {"lifted_entry", to_json(r.lifted_entry)}}},
      {"crossings", json{{"method", "exact real-root isolation (Sturm sequences) of the crossing polynomial in u = w^2"},
                         {"degenerate", r.crossings_degenerate},
                         {"points", crossings},
                         {"imaginary_axis_poles", r.axis_poles}}},
      {"asymptote", asymptote},
      {"tangents", tangents},
      {"notices", notices},
      {"metadata", json{{"tool", r.metadata.tool}, {"version", r.metadata.version}}},
  };
}

inline QualitativeReport report_from_json(const json& j) {
  QualitativeReport r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version > kSchemaVersion)
    throw std::invalid_argument("unsupported schema version " + std::to_string(r.schema_version));
  if (j.contains("metadata")) {
    r.metadata.tool = j["metadata"].value("tool", std::string(kToolName));
    r.metadata.version = j["metadata"].value("version", std::string());
  }
  r.tf = tf_from_json(j.at("input"));
  r.start = endpoint_summary_from(j.at("endpoints").at("start"));
  r.end = endpoint_summary_from(j.at("endpoints").at("end"));

  const auto& d = j.at("delta_tables");
  r.order = d.at("order").get<std::size_t>();
  r.taylor = detail::rational_list_from(d.at("taylor"));
  r.delta_tau = detail::rational_list_from(d.at("delta_tau"));
  r.dual_taylor = detail::rational_list_from(d.at("dual_taylor"));
  r.dual_delta_tau = detail::rational_list_from(d.at("dual_delta_tau"));

  const auto& b = j.at("behaviors");
  r.exit = endpoint_behavior_from(b.at("exit"));
  r.entry = endpoint_behavior_from(b.at("entry"));
  r.lifted_exit = lifted_from(b.at("lifted_exit"), r.exit);
  r.lifted_entry = lifted_from(b.at("lifted_entry"), r.entry);

  const auto& c = j.at("crossings");
  r.crossings_degenerate = c.at("degenerate").get<bool>();
  for (const auto& p : c.at("points")) r.crossings.push_back(axis_crossing_from(p));
  r.axis_poles = c.value("imaginary_axis_poles", std::vector<double>{});

  if (!j.at("asymptote").is_null())
    r.asymptote = Asymptote{Asymptote::Kind::VerticalLine, detail::rational_from(j["asymptote"].at("abscissa"))};

  if (!j.at("tangents").is_null()) {
    const auto& t = j["tangents"];
    auto opt_c = [](const json& z) -> std::optional<std::complex<double>> {
      if (z.is_null()) return std::nullopt;
      return detail::complex_from(z);
    };
    r.tangents = ReportTangents{detail::complex_from(t.at("start").at("direction")),
                                detail::complex_from(t.at("end").at("direction")),
                                t.at("start").at("omega").get<double>(),
                                t.at("end").at("omega").get<double>(),
                                opt_c(t.at("start").at("predicted")),
                                opt_c(t.at("end").at("predicted"))};
  }
  for (const auto& n : j.value("notices", json::array()))
    r.notices.push_back({n.at("code").get<std::string>(), n.value("message", std::string()), n.value("degenerate", false)});
  return r;
}

}  // namespace nyq
