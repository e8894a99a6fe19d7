#include "ratlink/mechanism_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace ratlink {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& msg) { throw Error(ErrorKind::SchemaError, msg); }

template <std::size_t N>
std::array<double, N> read_vector(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != N) {
    schema_error(what + " must be an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!j[i].is_number()) schema_error(what + "[" + std::to_string(i) + "] is not a number");
    out[i] = j[i].get<double>();
  }
  return out;
}

std::vector<DualQuaternion> read_dq_list(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) schema_error(what + " must be a nonempty array");
  std::vector<DualQuaternion> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.emplace_back(read_vector<8>(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

json dq_list(const std::vector<DualQuaternion>& list) {
  json arr = json::array();
  for (const auto& dq : list) arr.push_back(dq.c);
  return arr;
}

}  // namespace

Mechanism MechanismSpec::build() const {
  if (axes.empty() == coefficients.empty())
    schema_error("exactly one of 'axes' and 'coefficients' must be given");
  MotionPolynomial motion = axes.empty() ? MotionPolynomial{coefficients, study_tolerance}
                                         : MotionPolynomial::from_axes(axes, study_tolerance);
  return Mechanism{std::move(motion), driving_axis, tool_home};
}

IKOptions MechanismSpec::ik_options() const {
  IKOptions opts;
  if (ik_success_tol) opts.success_tol = *ik_success_tol;
  return opts;
}

MechanismSpec parse_mechanism_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object()) schema_error("mechanism file must contain an object");

  MechanismSpec spec;
  if (!j.contains("format") || !j["format"].is_number_integer())
    schema_error("missing integer 'format' field");
  if (j["format"].get<int>() != kMechanismFormatVersion)
    schema_error("unsupported format " + j["format"].dump());

  const bool has_axes = j.contains("axes");
  const bool has_coeffs = j.contains("coefficients");
  if (has_axes == has_coeffs) schema_error("exactly one of 'axes' and 'coefficients' must be given");
  if (has_axes) spec.axes = read_dq_list(j["axes"], "axes");
  if (has_coeffs) spec.coefficients = read_dq_list(j["coefficients"], "coefficients");

  if (!j.contains("driving_axis")) schema_error("missing 'driving_axis'");
  spec.driving_axis.q = read_vector<4>(j["driving_axis"], "driving_axis");
  if (j.contains("tool_home")) spec.tool_home = DualQuaternion{read_vector<8>(j["tool_home"], "tool_home")};
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema_error("'name' must be a string");
    spec.name = j["name"].get<std::string>();
  }
  if (j.contains("study_tolerance")) {
    if (!j["study_tolerance"].is_number() || j["study_tolerance"].get<double>() <= 0)
      schema_error("'study_tolerance' must be a positive number");
    spec.study_tolerance = j["study_tolerance"].get<double>();
  }
  if (j.contains("ik")) {
    const auto& ik = j["ik"];
    if (!ik.is_object()) schema_error("'ik' must be an object");
    if (ik.contains("success_tol")) {
      if (!ik["success_tol"].is_number()) schema_error("'ik.success_tol' must be a number");
      spec.ik_success_tol = ik["success_tol"].get<double>();
    }
  }
  if (j.contains("metadata")) spec.metadata_json = j["metadata"].dump();
  return spec;
}

MechanismSpec load_mechanism_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mechanism_spec(buf.str());
}

Mechanism load_mechanism(const std::filesystem::path& path) {
  return load_mechanism_spec(path).build();
}

std::string serialize_mechanism_spec(const MechanismSpec& spec) {
  json j;
  j["format"] = kMechanismFormatVersion;
  if (!spec.name.empty()) j["name"] = spec.name;
  if (!spec.axes.empty()) j["axes"] = dq_list(spec.axes);
  if (!spec.coefficients.empty()) j["coefficients"] = dq_list(spec.coefficients);
  j["driving_axis"] = spec.driving_axis.q;
  j["tool_home"] = spec.tool_home.c;
  j["study_tolerance"] = spec.study_tolerance;
  if (spec.ik_success_tol) j["ik"] = {{"success_tol", *spec.ik_success_tol}};
  j["metadata"] = json::parse(spec.metadata_json);
  return j.dump(2) + "\n";
}

void save_mechanism_spec(const MechanismSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << serialize_mechanism_spec(spec);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_profile_csv(std::ostream& os, const TrajectoryProfile& profile) {
  os << "index,time,theta,omega\n";
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const auto& s = profile.samples[i];
    os << i << ',' << format_double(s.time) << ',' << format_double(s.theta) << ','
       << format_double(s.omega) << '\n';
  }
}

void write_profile_structured(std::ostream& os, const TrajectoryProfile& profile) {
  json j;
  j["format"] = 1;
  j["duration"] = profile.duration;
  j["frequency"] = profile.frequency;
  json rows = json::array();
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const auto& s = profile.samples[i];
    rows.push_back({{"index", i}, {"time", s.time}, {"theta", s.theta}, {"omega", s.omega}});
  }
  j["samples"] = std::move(rows);
  os << j.dump(2) << '\n';
}

}  // namespace ratlink
