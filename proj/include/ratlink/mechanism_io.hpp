#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ratlink/kinematics.hpp"
#include "ratlink/trajectory.hpp"

namespace ratlink {

inline constexpr int kMechanismFormatVersion = 1;

/// On-disk mechanism description (JSON, "format": 1).
///
///   {
///     "format": 1,
///     "name": "bennett",
///     "coefficients": [[p0..p7], ...]      // ascending powers of t, or
///     "axes": [[p0..p7], ...],             // revolute axes, C = Π (t − h_i)
///     "driving_axis": [q0, q1, q2, q3],
///     "tool_home": [p0..p7],               // optional, identity by default
///     "study_tolerance": 1e-3,             // optional, default 1e-9
///     "ik": {"success_tol": 1e-4},         // optional IK overrides
///     "metadata": {...}                    // optional, kept verbatim
///   }
///
/// Exactly one of "axes" and "coefficients" must be present.
struct MechanismSpec {
  std::string name;
  std::vector<DualQuaternion> axes;
  std::vector<DualQuaternion> coefficients;
  DrivingAxis driving_axis;
  DualQuaternion tool_home = DualQuaternion::identity();
  double study_tolerance = tol::kStudy;
  std::optional<double> ik_success_tol;
  std::string metadata_json = "{}";

  /// Validated mechanism. Throws StudyViolation with coefficient magnitudes.
  Mechanism build() const;
  /// IK defaults with file overrides applied.
  IKOptions ik_options() const;
};

/// Throws ParseError for malformed text and SchemaError for schema violations.
MechanismSpec parse_mechanism_spec(const std::string& text);
MechanismSpec load_mechanism_spec(const std::filesystem::path& path);
Mechanism load_mechanism(const std::filesystem::path& path);

/// Doubles are written in shortest round-trip form, so save/load is bit-exact.
std::string serialize_mechanism_spec(const MechanismSpec& spec);
void save_mechanism_spec(const MechanismSpec& spec, const std::filesystem::path& path);

/// Shortest round-trip decimal, locale independent.
std::string format_double(double v);

/// "index,time,theta,omega" header then one row per sample, '\n' endings.
void write_profile_csv(std::ostream& os, const TrajectoryProfile& profile);
/// {"format":1,"duration":..,"frequency":..,"samples":[{index,time,theta,omega}..]}
void write_profile_structured(std::ostream& os, const TrajectoryProfile& profile);

}  // namespace ratlink
