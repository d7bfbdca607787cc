#include "geodubins/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "geodubins/errors.hpp"

namespace geodubins {

namespace {

void dump_value(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * depth + 2, ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_value(it.value(), depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Flat numeric arrays stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && v.is_primitive();
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        dump_value(v, depth + 1, out);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

[[noreturn]] void parse_error(const std::string& path, const std::string& what) {
  fail(ErrorKind::Parse, path + ": " + what);
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) parse_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_error(path + "." + key, "missing");
  return *it;
}

double real(const Json& j, const std::string& path) {
  if (!j.is_number()) parse_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_error(path, "not finite");
  return v;
}

std::vector<double> reals(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.size() != n) parse_error(path, "expected an array of " + std::to_string(n) + " numbers");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = real(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  fail(ErrorKind::InvalidInput, "validation: " + path + ": " + what);
}

Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "format_number: non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump_canonical(const Json& j) {
  std::string out;
  dump_value(j, 0, out);
  out += "\n";
  return out;
}

Json curve_to_json(const CurveDocument& doc) {
  Json j;
  j["schema"] = kCurveSchema;
  j["rho0"] = doc.rho0;
  Json start = Json::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) start.push_back(doc.curve.start(r, c));
  j["start"] = start;
  Json arcs = Json::array();
  for (const auto& a : doc.curve.arcs) {
    arcs.push_back({{"center", vec_json(a.center)},
                    {"radius", a.radius},
                    {"orientation", a.orientation > 0 ? "ccw" : "cw"},
                    {"start_angle", a.start_angle},
                    {"sweep", a.sweep}});
  }
  j["arcs"] = arcs;
  if (!doc.metadata.is_null()) j["metadata"] = doc.metadata;
  return j;
}

CurveDocument curve_from_json(const Json& j) {
  if (!j.is_object()) parse_error("$", "expected an object");
  const Json& schema = member(j, "schema", "$");
  if (!schema.is_string() || schema.get<std::string>() != kCurveSchema)
    parse_error("$.schema", std::string("expected \"") + kCurveSchema + "\"");
  CurveDocument doc;
  doc.rho0 = real(member(j, "rho0", "$"), "$.rho0");
  const auto s = reals(member(j, "start", "$"), 9, "$.start");
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) doc.curve.start(r, c) = s[3 * r + c];
  const Json& arcs = member(j, "arcs", "$");
  if (!arcs.is_array()) parse_error("$.arcs", "expected an array");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string path = "$.arcs[" + std::to_string(i) + "]";
    const Json& a = arcs[i];
    OrientedArc arc;
    const auto c = reals(member(a, "center", path), 3, path + ".center");
    arc.center = Vec3(c[0], c[1], c[2]);
    arc.radius = real(member(a, "radius", path), path + ".radius");
    const Json& o = member(a, "orientation", path);
    if (!o.is_string()) parse_error(path + ".orientation", "expected \"ccw\" or \"cw\"");
    const std::string os = o.get<std::string>();
    if (os == "ccw")
      arc.orientation = 1;
    else if (os == "cw")
      arc.orientation = -1;
    else
      parse_error(path + ".orientation", "unknown token \"" + os + "\"");
    arc.start_angle = real(member(a, "start_angle", path), path + ".start_angle");
    arc.sweep = real(member(a, "sweep", path), path + ".sweep");
    doc.curve.arcs.push_back(arc);
  }
  if (auto it = j.find("metadata"); it != j.end()) doc.metadata = *it;

  if (!(doc.rho0 > 0 && doc.rho0 < kPi / 2)) invalid("$.rho0", "outside (0, pi/2)");
  if (!is_rotation(doc.curve.start, 1e-9)) invalid("$.start", "not a rotation");
  for (std::size_t i = 0; i < doc.curve.arcs.size(); ++i) {
    const std::string path = "$.arcs[" + std::to_string(i) + "]";
    const auto& a = doc.curve.arcs[i];
    if (std::abs(a.center.norm() - 1.0) > 1e-9) invalid(path + ".center", "not a unit vector");
    if (!(a.radius > 0 && a.radius < kPi)) invalid(path + ".radius", "outside (0, pi)");
    if (!(a.sweep >= 0)) invalid(path + ".sweep", "negative");
  }
  const double defect = doc.curve.junction_defect();
  if (defect > 1e-9) invalid("$.arcs", "C1 defect " + format_number(defect) + " exceeds 1e-9");
  return doc;
}

std::string encode_curve(const CurveDocument& doc) { return dump_canonical(curve_to_json(doc)); }

CurveDocument decode_curve(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("$: malformed JSON: ") + e.what());
  }
  return curve_from_json(j);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorKind::InvalidInput, "write failed: " + path);
}

std::string samples_csv(const SampledCurve& s) {
  std::string out = "t,x,y,z,tx,ty,tz\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double row[7] = {s.t[i],           s.points[i].x(),   s.points[i].y(),  s.points[i].z(),
                           s.tangents[i].x(), s.tangents[i].y(), s.tangents[i].z()};
    for (int k = 0; k < 7; ++k) {
      if (k) out += ',';
      out += format_number(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string trace_csv(const std::vector<TraceEntry>& trace) {
  std::string out = "pass,offset,length\n";
  for (const auto& e : trace)
    out += std::to_string(e.pass) + "," + format_number(e.offset) + "," + format_number(e.length) + "\n";
  return out;
}

Json index_to_json(const IndexReport& r) {
  Json j{{"L1", r.L1},       {"L2", r.L2},       {"D1", r.D1},       {"D2", r.D2},
         {"Lbar1", r.Lbar1}, {"Lbar2", r.Lbar2}, {"Dbar1", r.Dbar1}, {"Dbar2", r.Dbar2}};
  j["n_Q"] = r.n_Q ? Json(*r.n_Q) : Json(nullptr);
  j["hypotheses"] = {{"h1", r.hyp.h1},
                     {"h2", r.hyp.h2},
                     {"h3", r.hyp.h3},
                     {"h4", r.hyp.h4},
                     {"h4_max_excess", r.hyp.h4_max_excess}};
  return j;
}

Json path_metadata(const PathSolution& p) {
  Json j{{"case", p.case_id()}, {"length", p.length()}};
  if (p.is_csc()) {
    const auto& c = std::get<CscSolution>(p.value);
    j["alpha"] = c.alpha;
    j["theta"] = c.theta;
    j["beta"] = c.beta;
  } else {
    const auto& c = std::get<CccSolution>(p.value);
    j["alpha"] = c.alpha;
    j["lambda"] = c.lambda;
    j["beta"] = c.beta;
  }
  return j;
}

Json segments_to_json(const SegmentReport& r) {
  Json segs = Json::array();
  for (const auto& s : r.segments)
    segs.push_back({{"label", std::string(1, s.label)},
                    {"curvature", s.curvature},
                    {"length", s.length},
                    {"interior", s.interior},
                    {"violation", s.violation}});
  return {{"segments", segs}, {"unclassified", r.unclassified}, {"negligible", r.negligible}, {"violations", r.violations}};
}

Json extraction_to_json(const ExtractionResult& e) {
  static const char* kinds[] = {"T+", "P+", "T-", "P-"};
  Json runs = Json::array();
  for (const auto& r : e.runs)
    runs.push_back({{"kind", kinds[int(r.kind)]}, {"first", r.first}, {"last", r.last}, {"value", r.value}, {"slot", r.slot}});
  const int idx = epsilon_index(e.x);
  return {{"x", e.x},
          {"index", e.in_c0 ? Json(idx) : Json(nullptr)},
          {"band_count", idx},
          {"epsilon", e.epsilon},
          {"runs", runs},
          {"in_c0", e.in_c0},
          {"max_lune_distance", e.max_lune_distance},
          {"v_gamma", vec_json(e.axis.v)},
          {"axis_min", e.axis.m},
          {"hemispheric", e.axis.hemispheric},
          {"degenerate_axis", e.axis.degenerate}};
}

Json gmap_to_json(const GMapResult& g) {
  return {{"y", g.y}, {"point", g.point}, {"in_c0", g.in_c0}, {"index", g.index}};
}

CriticalSpec critical_spec_from_json(const Json& j) {
  CriticalSpec s;
  s.rho0 = real(member(j, "rho0", "$"), "$.rho0");
  const Json& radii = member(j, "radii", "$");
  if (!radii.is_array() || radii.empty()) parse_error("$.radii", "expected a non-empty array");
  for (std::size_t i = 0; i < radii.size(); ++i) s.radii.push_back(real(radii[i], "$.radii[" + std::to_string(i) + "]"));
  if (auto it = j.find("leading_sign"); it != j.end()) {
    if (!it->is_number_integer() || (it->get<int>() != 1 && it->get<int>() != -1))
      parse_error("$.leading_sign", "expected 1 or -1");
    s.leading_sign = it->get<int>();
  }
  if (auto it = j.find("first_sweep"); it != j.end()) s.first_sweep = real(*it, "$.first_sweep");
  if (auto it = j.find("last_sweep"); it != j.end()) s.last_sweep = real(*it, "$.last_sweep");
  return s;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < tok.size() && tok[used] == ' ') ++used;
    if (tok.empty() || used != tok.size() || !std::isfinite(x))
      fail(ErrorKind::InvalidInput, "expected comma-separated reals, got \"" + text + "\"");
    v.push_back(x);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return v;
}

Mat3 parse_rotation(const std::string& text) {
  const std::string prefix = "axis-angle:";
  if (text.rfind(prefix, 0) == 0) {
    const auto v = parse_real_list(text.substr(prefix.size()));
    if (v.size() != 4) fail(ErrorKind::InvalidInput, "axis-angle needs 4 values");
    const Vec3 axis(v[0], v[1], v[2]);
    if (axis.norm() < 1e-12) fail(ErrorKind::InvalidInput, "axis-angle: zero axis");
    return rotation_about_axis(axis.normalized(), v[3]);
  }
  const auto v = parse_real_list(text);
  if (v.size() != 9) fail(ErrorKind::InvalidInput, "rotation needs 9 reals (row-major) or axis-angle:ax,ay,az,angle");
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = v[3 * r + c];
  if (!is_rotation(m, 1e-9)) fail(ErrorKind::InvalidInput, "matrix is not a rotation");
  return m;
}

}  // namespace geodubins
