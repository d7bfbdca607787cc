#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "geodubins/arcs.hpp"
#include "geodubins/classifier.hpp"
#include "geodubins/dubins.hpp"
#include "geodubins/index.hpp"
#include "geodubins/shortening.hpp"

namespace geodubins {

using Json = nlohmann::json;

inline constexpr const char* kCurveSchema = "geodubins.curve/1";

struct CurveDocument {
  double rho0 = 0.0;
  Curve curve;
  Json metadata;  // null when absent
};

// 17 significant digits; integral values keep a trailing ".0" so that they
// read back as doubles (including -0.0).
std::string format_number(double v);
// Deterministic text: sorted keys, two-space indent, numbers via format_number.
std::string dump_canonical(const Json& j);

Json curve_to_json(const CurveDocument& doc);
// Schema violations throw Parse with the JSON path; geometric violations
// (non-unit center, bad radius or sweep, start not a rotation, C1 defect
// above 1e-9) throw InvalidInput.
CurveDocument curve_from_json(const Json& j);

std::string encode_curve(const CurveDocument& doc);
CurveDocument decode_curve(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Header t,x,y,z,tx,ty,tz.
std::string samples_csv(const SampledCurve& s);
// Header pass,offset,length.
std::string trace_csv(const std::vector<TraceEntry>& trace);

Json index_to_json(const IndexReport& r);
Json path_metadata(const PathSolution& p);
Json segments_to_json(const SegmentReport& r);
// "index" is null outside C0 (the epsilon-index is defined only there);
// "band_count" is the raw count from the sequence.
Json extraction_to_json(const ExtractionResult& e);
Json gmap_to_json(const GMapResult& g);

// {"rho0", "radii", "leading_sign", "first_sweep", "last_sweep"}; missing
// sweeps default to pi/2.
CriticalSpec critical_spec_from_json(const Json& j);

// "axis-angle:ax,ay,az,angle" or nine comma-separated reals, row-major.
Mat3 parse_rotation(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace geodubins
