// ratlink: direct/inverse kinematics and driving-joint trajectories for
// 1-DoF rational linkages described by a mechanism file.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ratlink/kinematics.hpp"
#include "ratlink/mechanism_io.hpp"
#include "ratlink/trajectory.hpp"

namespace {

using namespace ratlink;

enum ExitCode { kOk = 0, kUsage = 2, kParse = 3, kNoConvergence = 4, kNumerical = 5 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::StudyViolation:
      return kParse;
    case ErrorKind::InvalidArgument:
      return kUsage;
    case ErrorKind::NoConvergence:
      return kNoConvergence;
    default:
      return kNumerical;
  }
}

void print_error(std::string_view kind, std::string message) {
  for (auto& ch : message)
    if (ch == '\n' || ch == '\r') ch = ' ';
  std::cerr << "error: " << kind << ": " << message << '\n';
}

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string param_text(MotionParam t, int precision) {
  return t.is_infinite() ? std::string("inf") : fixed(t.value(), precision);
}

TravelDirection parse_arc(const std::string& arc) {
  if (arc == "short") return TravelDirection::ShortArc;
  if (arc == "long") return TravelDirection::LongArc;
  if (arc == "increasing-t") return TravelDirection::IncreasingT;
  return TravelDirection::DecreasingT;
}

struct Common {
  std::string mechanism;
  bool degrees = false;
  int precision = 6;
};

double to_radians(double v, const Common& c) { return c.degrees ? v * std::numbers::pi / 180.0 : v; }

Vec3 resolve_tool(const std::vector<double>& tool, const Mechanism& m) {
  if (tool.empty()) return tool_point(m);
  return {tool[0], tool[1], tool[2]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinematics and trajectory planning for 1-DoF rational linkages"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("mechanism", common.mechanism, "Mechanism file (JSON, format 1)")->required();
    sub->add_flag("--degrees", common.degrees, "Angles on the command line are in degrees");
    sub->add_option("--precision", common.precision, "Decimal places in printed values")
        ->check(CLI::Range(0, 17));
  };

  // dk
  auto* dk = app.add_subcommand("dk", "Tool pose for a driving joint angle");
  add_common(dk);
  double dk_theta = 0.0;
  dk->add_option("--theta", dk_theta, "Driving joint angle [rad]")->required();

  // ik
  auto* ik = app.add_subcommand("ik", "Driving joint angle for a tool pose");
  add_common(ik);
  std::vector<double> ik_pose;
  ik->add_option("--pose", ik_pose, "Pose p0..p7")->required()->expected(8);
  double ik_tol = -1.0;
  int ik_seeds = 21;
  int ik_iters = 100;
  ik->add_option("--success-tol", ik_tol, "Residual bound on |E|^2 (default: file or 1e-10)");
  ik->add_option("--seeds", ik_seeds, "Seeds in [-1, 1]")->check(CLI::PositiveNumber);
  ik->add_option("--max-iters", ik_iters, "Gauss-Newton iterations per seed")
      ->check(CLI::PositiveNumber);

  // traj
  auto* traj = app.add_subcommand("traj", "Sampled driving joint profile");
  add_common(traj);
  double th0 = 0.0, th1 = 0.0, duration = 0.0, freq = 0.0;
  std::string mode = "equidistant", arc = "short", out_path, format = "csv";
  std::vector<double> traj_tool;
  bool blend = false;
  traj->add_option("--theta0", th0, "Start angle [rad]")->required();
  traj->add_option("--theta1", th1, "End angle [rad]")->required();
  traj->add_option("--duration", duration, "Motion time [s]")->required();
  traj->add_option("--freq", freq, "Control frequency [Hz]")->required();
  traj->add_option("--mode", mode)->check(CLI::IsMember({"linear", "quintic", "equidistant"}));
  traj->add_option("--tool", traj_tool, "Tool point x,y,z (default: home tool origin)")
      ->expected(3)
      ->delimiter(',');
  traj->add_option("--arc", arc)->check(
      CLI::IsMember({"short", "long", "increasing-t", "decreasing-t"}));
  traj->add_option("--out", out_path, "Output file (default: stdout)");
  traj->add_option("--format", format)->check(CLI::IsMember({"csv", "structured"}));
  traj->add_flag("--blend", blend, "Quintic velocity ramps at both ends (equidistant mode)");

  // arclen
  auto* arclen = app.add_subcommand("arclen", "Tool path length between two joint angles");
  add_common(arclen);
  double al0 = 0.0, al1 = 0.0;
  std::vector<double> al_tool;
  std::string al_arc = "short";
  arclen->add_option("--theta0", al0, "Start angle [rad]")->required();
  arclen->add_option("--theta1", al1, "End angle [rad]")->required();
  arclen->add_option("--tool", al_tool, "Tool point x,y,z")->expected(3)->delimiter(',');
  arclen->add_option("--arc", al_arc)->check(
      CLI::IsMember({"short", "long", "increasing-t", "decreasing-t"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return kUsage;
  }

  try {
    const MechanismSpec spec = load_mechanism_spec(common.mechanism);
    const Mechanism mech = spec.build();
    const int prec = common.precision;

    if (dk->parsed()) {
      const auto pose = normalize_canonical(
          direct_kinematics(mech, JointAngle{to_radians(dk_theta, common)}));
      for (std::size_t i = 0; i < 8; ++i) std::cout << (i ? " " : "") << fixed(pose[i], prec);
      std::cout << '\n';
    } else if (ik->parsed()) {
      IKOptions opts = spec.ik_options();
      if (ik_tol > 0) opts.success_tol = ik_tol;
      opts.n_seeds = ik_seeds;
      opts.max_iters = ik_iters;
      DualQuaternion pose;
      for (std::size_t i = 0; i < 8; ++i) pose[i] = ik_pose[i];
      const IKResult r = inverse_kinematics(mech, pose, opts);
      char residual[32];
      std::snprintf(residual, sizeof residual, "%.3e", r.residual);
      std::cout << "theta=" << fixed(r.theta.radians(), prec) << " t=" << param_text(r.t, prec)
                << " residual=" << residual << " branch=" << to_string(r.branch)
                << " iterations=" << r.iterations << '\n';
    } else if (traj->parsed()) {
      const JointAngle a0{to_radians(th0, common)};
      const JointAngle a1{to_radians(th1, common)};
      const TravelDirection dir = parse_arc(arc);
      TrajectoryProfile profile;
      if (mode == "linear") {
        profile = linear_profile(a0, a1, duration, freq, dir);
      } else if (mode == "quintic") {
        profile = quintic_profile(a0, a1, duration, freq, dir);
      } else {
        EquidistantOptions eo;
        eo.blend = blend;
        profile = equidistant_profile(mech, resolve_tool(traj_tool, mech), a0, a1, duration, freq,
                                      dir, eo);
      }
      std::ostringstream buf;
      if (format == "csv") {
        write_profile_csv(buf, profile);
      } else {
        write_profile_structured(buf, profile);
      }
      if (out_path.empty()) {
        std::cout << buf.str();
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + out_path);
        out << buf.str();
      }
    } else if (arclen->parsed()) {
      const PathTraversal tr =
          make_traversal(mech, resolve_tool(al_tool, mech), JointAngle{to_radians(al0, common)},
                         JointAngle{to_radians(al1, common)}, parse_arc(al_arc));
      std::cout << fixed(tr.total_length(), prec) << '\n';
    }
  } catch (const Error& e) {
    print_error(to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return kNumerical;
  }
  return kOk;
}
