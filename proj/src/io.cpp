#include "lvseasons/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lvseasons::io {

namespace {

using nlohmann::json;

json vec_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json mat_to_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i)
    rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return rows;
}

double number_at(const json& doc, const char* key) {
  if (!doc.contains(key))
    throw ConfigError("ConfigParseError",
                      std::string("missing key \"") + key + "\"");
  const auto& v = doc.at(key);
  if (!v.is_number())
    throw ConfigError("ConfigParseError",
                      std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

Vec3 vec_at(const json& doc, const char* key) {
  if (!doc.contains(key))
    throw ConfigError("ConfigParseError",
                      std::string("missing key \"") + key + "\"");
  const auto& v = doc.at(key);
  if (!v.is_array() || v.size() != 3)
    throw ConfigError("ConfigParseError", std::string("key \"") + key +
                                              "\" must be an array of 3 numbers");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number())
      throw ConfigError("ConfigParseError", std::string("key \"") + key +
                                                "\" must contain numbers only");
    out[i] = v[i].get<double>();
  }
  return out;
}

const char* cycle_name(BoundaryPortrait::Cycle c) {
  switch (c) {
    case BoundaryPortrait::Cycle::Forward:
      return "1->2->3->1";
    case BoundaryPortrait::Cycle::Backward:
      return "1->3->2->1";
    default:
      return "none";
  }
}

const char* verdict_name(PermanenceVerdict::Kind k) {
  switch (k) {
    case PermanenceVerdict::Kind::Permanent:
      return "Permanent";
    case PermanenceVerdict::Kind::Impermanent:
      return "Impermanent";
    default:
      return "Indeterminate";
  }
}

const char* witness_name(PermanenceVerdict::Witness w) {
  switch (w) {
    case PermanenceVerdict::Witness::Extinction:
      return "Extinction";
    case PermanenceVerdict::Witness::NonHyperbolicBoundary:
      return "NonHyperbolicBoundary";
    case PermanenceVerdict::Witness::AttractingBoundaryPoint:
      return "AttractingBoundaryPoint";
    case PermanenceVerdict::Witness::HeteroclinicCycle:
      return "HeteroclinicCycle";
    case PermanenceVerdict::Witness::LyapunovWeights:
      return "LyapunovWeights";
    default:
      return "Inconclusive";
  }
}

std::string map_range(double v, double lo, double hi, double out_lo,
                      double out_hi) {
  const double f = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", out_lo + f * (out_hi - out_lo));
  return buf;
}

}  // namespace

SeasonalParams params_from_json(const json& doc) {
  if (!doc.is_object())
    throw ConfigError("ConfigParseError", "parameter document must be a JSON object");
  SeasonalParams p;
  p.period = number_at(doc, "omega");
  p.good_fraction = number_at(doc, "phi");
  p.death_rate = vec_at(doc, "mu");
  p.growth_rate = vec_at(doc, "b");

  if (!doc.contains("a"))
    throw ConfigError("ConfigParseError", "missing key \"a\"");
  const auto& a = doc.at("a");
  if (!a.is_array() || a.size() != 3)
    throw ConfigError("ConfigParseError", "key \"a\" must be a 3x3 array");
  for (int i = 0; i < 3; ++i) {
    if (!a[i].is_array() || a[i].size() != 3)
      throw ConfigError("ConfigParseError", "key \"a\" must be a 3x3 array");
    for (int j = 0; j < 3; ++j) {
      if (!a[i][j].is_number())
        throw ConfigError("ConfigParseError", "key \"a\" must contain numbers only");
      p.competition(i, j) = a[i][j].get<double>();
    }
  }
  checked(p);
  return p;
}

SeasonalParams params_from_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("ConfigParseError", e.what());
  }
  return params_from_json(doc);
}

SeasonalParams params_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("ConfigParseError", "cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_text(buf.str());
}

json params_to_json(const SeasonalParams& p) {
  return json{{"omega", p.period},
              {"phi", p.good_fraction},
              {"mu", vec_to_json(p.death_rate)},
              {"b", vec_to_json(p.growth_rate)},
              {"a", mat_to_json(p.competition)}};
}

json derived_to_json(const DerivedQuantities& d) {
  json pair_moment = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) {
      if (i != j && d.pair_moment[i][j])
        row.push_back(*d.pair_moment[i][j]);
      else
        row.push_back(nullptr);
    }
    pair_moment.push_back(row);
  }
  return json{{"net_growth", vec_to_json(d.net_growth)},
              {"survival", vec_to_json(d.survival)},
              {"invasion_log", mat_to_json(d.invasion_log)},
              {"invasion_log_scaled", mat_to_json(d.invasion_log_scaled)},
              {"pair_moment", pair_moment},
              {"cycle_discriminant", d.cycle_discriminant},
              {"axial_moment", vec_to_json(d.axial_moment)}};
}

json fixed_point_to_json(const FixedPoint& fp) {
  json support = json::array();
  for (int s : fp.support) support.push_back(s + 1);
  json spectrum = json::array();
  for (const auto& lam : fp.multipliers)
    spectrum.push_back(json::array({lam.real(), lam.imag()}));
  json tlog = json::object();
  std::array<bool, 3> on{};
  for (int s : fp.support) on[s] = true;
  for (int i = 0; i < 3; ++i)
    if (!on[i]) tlog[std::to_string(i + 1)] = fp.transversal_log[i];
  return json{{"support", support},
              {"theta", vec_to_json(fp.point)},
              {"theta_hat", vec_to_json(fp.moment)},
              {"multipliers", json{{"spectrum", spectrum},
                                   {"transversal_log", tlog}}},
              {"residual", fp.residual}};
}

json portrait_to_json(const BoundaryPortrait& portrait) {
  json axial = json::array();
  for (const auto& fp : portrait.axial)
    axial.push_back(fp ? fixed_point_to_json(*fp) : json(nullptr));
  json planar = json::array();
  for (const auto& plane : portrait.planar) {
    json list = json::array();
    for (const auto& fp : plane) list.push_back(fixed_point_to_json(fp));
    planar.push_back(list);
  }
  return json{{"axial", axial},
              {"planar", planar},
              {"hyperbolic", portrait.hyperbolic},
              {"heteroclinic_cycle", cycle_name(portrait.cycle)}};
}

json verdict_to_json(const PermanenceVerdict& v) {
  json witness{{"kind", witness_name(v.witness)}};
  json extinct = json::array();
  for (int i : v.extinct_species) extinct.push_back(i + 1);
  witness["extinct_species"] = extinct;
  if (v.attracting_point)
    witness["attracting_point"] = fixed_point_to_json(*v.attracting_point);
  if (v.witness == PermanenceVerdict::Witness::HeteroclinicCycle) {
    witness["cycle_discriminant"] = v.derived.cycle_discriminant;
    witness["orientation"] =
        v.portrait ? cycle_name(v.portrait->cycle) : "none";
  }
  if (v.certificate) {
    witness["weights"] = vec_to_json(v.certificate->weights);
    witness["margin"] = v.certificate->margin;
  }
  if (v.feasibility &&
      v.witness == PermanenceVerdict::Witness::Inconclusive) {
    witness["permanence_margin"] = v.feasibility->permanence.margin;
    witness["impermanence_margin"] = v.feasibility->impermanence.margin;
  }
  json out{{"verdict", verdict_name(v.verdict)},
           {"witness", witness},
           {"derived", derived_to_json(v.derived)}};
  out["portrait"] =
      v.portrait ? portrait_to_json(*v.portrait) : json(nullptr);
  return out;
}

json attractor_to_json(const AttractorReport& report) {
  json out;
  switch (report.kind) {
    case AttractorReport::Kind::FixedPoint:
      out["kind"] = "FixedPoint";
      break;
    case AttractorReport::Kind::ClosedCurve:
      out["kind"] = "ClosedCurve";
      break;
    default:
      out["kind"] = "Unresolved";
  }
  out["fixed_point"] =
      report.fixed_point ? vec_to_json(*report.fixed_point) : json(nullptr);
  if (report.curve) {
    const auto& c = *report.curve;
    out["curve"] = json{
        {"diameter", c.diameter},
        {"min_gap_to_fixed_points", c.min_gap_to_fixed_points},
        {"closure_defect", c.closure_defect},
        {"rotation_number",
         std::isfinite(c.rotation_number) ? json(c.rotation_number)
                                          : json(nullptr)},
        {"rotation_defect",
         std::isfinite(c.rotation_defect) ? json(c.rotation_defect)
                                          : json(nullptr)}};
  } else {
    out["curve"] = nullptr;
  }
  out["iterations_used"] = report.iterations_used;
  return out;
}

json error_to_json(const std::string& code, const std::string& msg,
                   const std::vector<std::string>& details) {
  json err{{"code", code}, {"message", msg}};
  if (!details.empty()) {
    json list = json::array();
    for (const auto& d : details) list.push_back(d);
    err["details"] = list;
  }
  return json{{"error", err}};
}

std::string verdict_summary(const PermanenceVerdict& v) {
  std::ostringstream os;
  os << "verdict: " << verdict_name(v.verdict)
     << " (witness: " << witness_name(v.witness) << ")\n";
  os << "net growth per period:";
  for (int i = 0; i < 3; ++i) os << " " << v.derived.net_growth[i];
  os << "\n";
  if (v.witness == PermanenceVerdict::Witness::HeteroclinicCycle)
    os << "cycle discriminant: " << v.derived.cycle_discriminant << "\n";
  if (v.certificate)
    os << "weight margin: " << v.certificate->margin << "\n";
  if (!v.extinct_species.empty()) {
    os << "extinct species:";
    for (int i : v.extinct_species) os << " " << i + 1;
    os << "\n";
  }
  return os.str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string series_csv(const std::vector<std::pair<double, Vec3>>& rows) {
  std::string out = "t,x1,x2,x3\n";
  for (const auto& [t, x] : rows) {
    out += format_double(t);
    for (int i = 0; i < 3; ++i) {
      out += ',';
      out += format_double(x[i]);
    }
    out += '\n';
  }
  return out;
}

std::string orbit_csv(const std::vector<Vec3>& points) {
  std::string out = "k,x1,x2,x3\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    out += std::to_string(k);
    for (int i = 0; i < 3; ++i) {
      out += ',';
      out += format_double(points[k][i]);
    }
    out += '\n';
  }
  return out;
}

std::string svg_time_series(const std::vector<std::pair<double, Vec3>>& rows) {
  const double w = 880, h = 460, ml = 60, mr = 20, mt = 20, mb = 40;
  double t_max = 1e-12, x_max = 1e-12;
  for (const auto& [t, x] : rows) {
    t_max = std::max(t_max, t);
    x_max = std::max(x_max, x.maxCoeff());
  }
  x_max *= 1.05;

  static const char* colors[3] = {"#d62728", "#2ca02c", "#1f77b4"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
     << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
     << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  for (int i = 0; i < 3; ++i) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[i]
       << "\" stroke-width=\"1.2\" points=\"";
    for (const auto& [t, x] : rows)
      os << map_range(t, 0, t_max, ml, w - mr) << ","
         << map_range(x[i], 0, x_max, h - mb, mt) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << ml + 12 + 60 * i << "\" y=\"" << mt + 14
       << "\" fill=\"" << colors[i] << "\" font-size=\"13\">x" << i + 1
       << "</text>\n";
  }
  char lab[64];
  std::snprintf(lab, sizeof lab, "%.4g", t_max);
  os << "<text x=\"" << w - mr - 30 << "\" y=\"" << h - mb + 18
     << "\" font-size=\"12\">" << lab << "</text>\n";
  os << "<text x=\"" << ml << "\" y=\"" << h - mb + 18
     << "\" font-size=\"12\">0</text>\n";
  std::snprintf(lab, sizeof lab, "%.4g", x_max);
  os << "<text x=\"" << 4 << "\" y=\"" << mt + 10 << "\" font-size=\"12\">"
     << lab << "</text>\n";
  os << "<text x=\"" << (w / 2) << "\" y=\"" << h - 8
     << "\" font-size=\"12\">t</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string svg_orbit(const std::vector<Vec3>& points) {
  const double w = 640, h = 560;
  auto project = [](const Vec3& p) {
    return std::pair<double, double>{(p[0] - p[1]) * 0.8660254037844386,
                                     (p[0] + p[1]) * 0.5 - p[2]};
  };
  double u_lo = 1e300, u_hi = -1e300, v_lo = 1e300, v_hi = -1e300;
  for (const auto& p : points) {
    const auto [u, v] = project(p);
    u_lo = std::min(u_lo, u);
    u_hi = std::max(u_hi, u);
    v_lo = std::min(v_lo, v);
    v_hi = std::max(v_hi, v);
  }
  if (points.empty()) u_lo = v_lo = 0, u_hi = v_hi = 1;
  const double pad_u = 0.07 * std::max(u_hi - u_lo, 1e-9);
  const double pad_v = 0.07 * std::max(v_hi - v_lo, 1e-9);
  u_lo -= pad_u;
  u_hi += pad_u;
  v_lo -= pad_v;
  v_hi += pad_v;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  for (const auto& p : points) {
    const auto [u, v] = project(p);
    os << "<circle cx=\"" << map_range(u, u_lo, u_hi, 20, w - 20) << "\" cy=\""
       << map_range(v, v_lo, v_hi, h - 20, 20)
       << "\" r=\"1.4\" fill=\"#1f77b4\"/>\n";
  }
  os << "<text x=\"10\" y=\"" << h - 6
     << "\" font-size=\"12\">period-map iterates (isometric projection)"
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
  out << content;
  if (!out) throw std::runtime_error("short write to \"" + path + "\"");
}

}  // namespace lvseasons::io
