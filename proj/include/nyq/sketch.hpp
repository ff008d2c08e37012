#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <complex>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nyq/global_features.hpp"
#include "nyq/report.hpp"

// Qualitative Nyquist sketch: sweep polyline plus the annotations computed
// by the analysis. Every annotation carries the report key it came from.

namespace nyq {

struct SketchMarker {
  std::string key;
  std::string label;
  std::complex<double> at;
};

struct SketchArrow {
  std::string key;
  std::complex<double> at;
  /// Direction of motion with increasing w.
  std::complex<double> direction;
  /// The arrow ends at `at` (entry) instead of starting there (exit).
  bool incoming = false;
};

struct SketchGlyph {
  std::string key;
  std::string text;
  std::complex<double> near;
};

struct SketchDocument {
  std::vector<SweepSample> samples;
  std::vector<SketchMarker> endpoints;
  std::vector<SketchMarker> crossings;
  std::vector<SketchArrow> tangents;
  std::vector<SketchGlyph> glyphs;
  std::optional<double> asymptote_abscissa;
  std::string title;
  bool single_point = false;
  /// View box in the complex plane.
  double x_min = -1, x_max = 1, y_min = -1, y_max = 1;
};

struct SketchOptions {
  double omega_min = 0.0;  // 0 selects the default range
  double omega_max = 0.0;
  int points_per_decade = 100;
};

namespace detail {

inline std::string behavior_text(const EndpointBehavior& b) {
  std::string s = b.end == Endpoint::Start ? "exit" : "entry";
  if (b.archetype) s += " " + std::to_string(*b.archetype);
  s += std::string(": ") + to_name(b.phase_sense);
  if (b.approach_axis != ApproachAxis::Degenerate) s += std::string(", ") + to_name(b.approach_axis);
  if (b.rotated_frame) s += ", rotated frame";
  return s;
}

inline std::optional<std::complex<double>> endpoint_point(const EndpointSummary& e) {
  if (e.modulus_kind == ModulusKind::Infinite) return std::nullopt;
  if (e.modulus_kind == ModulusKind::Zero) return std::complex<double>(0.0, 0.0);
  return std::polar(to_double(*e.modulus), to_double(e.phase_over_pi) * std::numbers::pi);
}

}  // namespace detail

inline SketchDocument build_sketch(const QualitativeReport& r, const SketchOptions& opt = {}) {
  SketchDocument doc;
  doc.title = format_tf(r.tf);
  const auto [dlo, dhi] = default_omega_range(r.tf);
  const double lo = opt.omega_min > 0 ? opt.omega_min : dlo;
  const double hi = opt.omega_max > 0 ? opt.omega_max : dhi;
  SweepOptions sopt;
  sopt.anchor_phase = start_phase(r.tf);
  doc.samples = sweep(r.tf, lo, hi, opt.points_per_decade, sopt);

  const auto p0 = detail::endpoint_point(r.start);
  const auto pinf = detail::endpoint_point(r.end);
  if (p0) doc.endpoints.push_back({"endpoints.start", "P0", *p0});
  if (pinf) doc.endpoints.push_back({"endpoints.end", "Pinf", *pinf});
  doc.single_point = is_constant_function(r.tf);

  for (std::size_t i = 0; i < r.crossings.size(); ++i)
    doc.crossings.push_back({"crossings.points[" + std::to_string(i) + "]", "", {r.crossings[i].real_value, 0.0}});
  if (r.asymptote) doc.asymptote_abscissa = to_double(r.asymptote->abscissa);

  if (r.tangents && !doc.single_point) {
    if (p0) doc.tangents.push_back({"tangents.start", *p0, r.tangents->start, false});
    if (pinf) doc.tangents.push_back({"tangents.end", *pinf, r.tangents->end, true});
  }
  if (!doc.single_point) {
    doc.glyphs.push_back({"behaviors.exit", detail::behavior_text(r.exit), p0.value_or(doc.samples.front().value)});
    doc.glyphs.push_back({"behaviors.entry", detail::behavior_text(r.entry), pinf.value_or(doc.samples.back().value)});
  }

  // View: the finite features, widened to include the curve up to a cap so
  // divergent branches do not flatten everything else.
  std::vector<std::complex<double>> anchors{{0.0, 0.0}};
  for (const auto& m : doc.endpoints) anchors.push_back(m.at);
  for (const auto& m : doc.crossings) anchors.push_back(m.at);
  if (doc.asymptote_abscissa) anchors.emplace_back(*doc.asymptote_abscissa, 0.0);
  double feature = 0.0;
  for (const auto& a : anchors) feature = std::max(feature, std::abs(a));
  std::vector<double> mods;
  for (const auto& s : doc.samples) mods.push_back(s.modulus);
  std::sort(mods.begin(), mods.end());
  const double typical = mods.empty() ? 1.0 : mods[mods.size() / 2];
  const double cap = std::max({feature * 3.0, typical * 2.0, 1e-12});
  doc.x_min = doc.y_min = 0.0;
  doc.x_max = doc.y_max = 0.0;
  auto include = [&](std::complex<double> z) {
    doc.x_min = std::min(doc.x_min, z.real());
    doc.x_max = std::max(doc.x_max, z.real());
    doc.y_min = std::min(doc.y_min, z.imag());
    doc.y_max = std::max(doc.y_max, z.imag());
  };
  for (const auto& a : anchors) include(a);
  for (const auto& s : doc.samples)
    if (s.modulus <= cap) include(s.value);
  const double span = std::max({doc.x_max - doc.x_min, doc.y_max - doc.y_min, 1e-9});
  const double pad = 0.08 * span;
  doc.x_min -= pad;
  doc.x_max += pad;
  doc.y_min -= pad;
  doc.y_max += pad;
  return doc;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline void write_svg(std::ostream& os, const SketchDocument& doc, int width = 800, int height = 600) {
  const double margin = 40.0;
  const double sx = (width - 2 * margin) / (doc.x_max - doc.x_min);
  const double sy = (height - 2 * margin) / (doc.y_max - doc.y_min);
  const double scale = std::min(sx, sy);
  const double cx = width / 2.0 - scale * (doc.x_min + doc.x_max) / 2.0;
  const double cy = height / 2.0 + scale * (doc.y_min + doc.y_max) / 2.0;
  auto X = [&](double x) { return cx + scale * x; };
  auto Y = [&](double y) { return cy - scale * y; };
  using detail::fmt;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
     << width << " " << height << "\">\n";
  os << "<title>" << detail::escape_xml(doc.title) << "</title>\n";
  os << "<defs>\n<clipPath id=\"view\"><rect x=\"" << margin / 2 << "\" y=\"" << margin / 2 << "\" width=\""
     << width - margin << "\" height=\"" << height - margin << "\"/></clipPath>\n";
  os << "<marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" orient=\"auto\">"
        "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"#c0392b\"/></marker>\n</defs>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  os << "<g stroke=\"#999\" stroke-width=\"1\">\n";
  os << "<line data-key=\"axis.real\" x1=\"0\" y1=\"" << fmt(Y(0)) << "\" x2=\"" << width << "\" y2=\"" << fmt(Y(0)) << "\"/>\n";
  os << "<line data-key=\"axis.imag\" x1=\"" << fmt(X(0)) << "\" y1=\"0\" x2=\"" << fmt(X(0)) << "\" y2=\"" << height << "\"/>\n";
  os << "</g>\n";

  if (doc.asymptote_abscissa) {
    const double x = X(*doc.asymptote_abscissa);
    os << "<line data-key=\"asymptote\" x1=\"" << fmt(x) << "\" y1=\"0\" x2=\"" << fmt(x) << "\" y2=\"" << height
       << "\" stroke=\"#2980b9\" stroke-dasharray=\"6,4\"/>\n";
  }

  // Curve, split where it leaves a generous box around the view.
  os << "<g clip-path=\"url(#view)\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
  const double limit = 4.0 * std::max(width, height);
  std::string run;
  int run_points = 0;
  auto flush = [&]() {
    if (run_points >= 2) os << "<polyline data-key=\"sweep\" points=\"" << run << "\"/>\n";
    run.clear();
    run_points = 0;
  };
  for (const auto& s : doc.samples) {
    const double x = X(s.value.real());
    const double y = Y(s.value.imag());
    if (!std::isfinite(x) || !std::isfinite(y) || std::abs(x) > limit || std::abs(y) > limit) {
      flush();
      continue;
    }
    if (run_points > 0) run += ' ';
    run += fmt(x) + "," + fmt(y);
    ++run_points;
  }
  flush();
  os << "</g>\n";

  for (const auto& c : doc.crossings)
    os << "<circle data-key=\"" << c.key << "\" cx=\"" << fmt(X(c.at.real())) << "\" cy=\"" << fmt(Y(0)) << "\" r=\"3.5\" fill=\"#27ae60\"/>\n";

  for (const auto& a : doc.tangents) {
    const double len = 45.0;
    const double dx = len * a.direction.real();
    const double dy = -len * a.direction.imag();
    const double x1 = X(a.at.real()) - (a.incoming ? dx : 0.0);
    const double y1 = Y(a.at.imag()) - (a.incoming ? dy : 0.0);
    os << "<line data-key=\"" << a.key << "\" x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\""
       << fmt(x1 + dx) << "\" y2=\"" << fmt(y1 + dy)
       << "\" stroke=\"#c0392b\" stroke-width=\"2\" marker-end=\"url(#head)\"/>\n";
  }

  for (const auto& m : doc.endpoints) {
    os << "<circle data-key=\"" << m.key << "\" cx=\"" << fmt(X(m.at.real())) << "\" cy=\"" << fmt(Y(m.at.imag()))
       << "\" r=\"5\" fill=\"#8e44ad\"/>\n";
    os << "<text data-key=\"" << m.key << "\" x=\"" << fmt(X(m.at.real()) + 7) << "\" y=\"" << fmt(Y(m.at.imag()) + 16)
       << "\" font-size=\"13\" font-family=\"sans-serif\">" << m.label << "</text>\n";
  }

  double text_y = 18.0;
  for (const auto& g : doc.glyphs) {
    os << "<text data-key=\"" << g.key << "\" x=\"10\" y=\"" << fmt(text_y)
       << "\" font-size=\"13\" font-family=\"sans-serif\">" << detail::escape_xml(g.text) << "</text>\n";
    text_y += 16.0;
  }
  if (doc.single_point)
    os << "<text data-key=\"notices.constant_function\" x=\"10\" y=\"" << fmt(text_y)
       << "\" font-size=\"13\" font-family=\"sans-serif\">constant function: single point</text>\n";
  os << "</svg>\n";
}

inline void write_samples_csv(std::ostream& os, const std::vector<SweepSample>& samples) {
  os << "omega,re,im,modulus,phase_unwrapped\n";
  char buf[160];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.omega, s.value.real(), s.value.imag(),
                  s.modulus, s.phase_unwrapped);
    os << buf;
  }
}

}  // namespace nyq
