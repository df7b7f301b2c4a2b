#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcil/plant.hpp"

namespace bcil {

// One robot at one instant: the [θ, θ̇, τ] triple logged per control tick.
struct RobotState {
  JointVec theta = JointVec::Zero();
  JointVec theta_dot = JointVec::Zero();
  JointVec tau = JointVec::Zero();
};

struct DemoLog {
  double dt = 0.001;
  std::vector<RobotState> leader;
  std::vector<RobotState> follower;
  Environment env;
  std::string task;
  std::uint64_t seed = 0;
};

// Scripted expert: timed waypoints along the contact surface. x is the
// position along the surface line, normal_offset the displacement along the
// surface normal (negative = pressing into the surface).
struct Waypoint {
  double t = 0.0;
  double x = 0.0;
  double normal_offset = 0.0;
  bool press = false;
};

struct ExpertScript {
  std::vector<Waypoint> waypoints;

  double duration() const { return waypoints.empty() ? 0.0 : waypoints.back().t; }

  // Tip reference at time t (trapezoidal speed profile between waypoints,
  // holds the last waypoint afterwards). press reports the active segment.
  Vec2 reference(double t, const Environment& env, bool* press = nullptr) const;
};

struct BilateralGains {
  double kp = 250.0;  // position channel [N·m/rad]
  double kd = 7.0;
  double kf = 0.8;    // force reflection (dimensionless)

  static BilateralGains from_config(const Config& cfg);
};

struct ExpertGains {
  double kp = 150.0;
  double kd = 5.0;
  double ref_noise_sigma = 0.002;  // [rad], OU-filtered leader reference noise

  static ExpertGains from_config(const Config& cfg);
};

// Geometry of the scripted glyph/wipe tasks on the surface line.
struct TaskGeometry {
  double x0 = 0.16;             // left edge of the writing span [m]
  double width = 0.18;
  double lift = 0.035;          // clearance above the surface between strokes [m]
  double press_depth_base = 0.0012;
  double press_depth_per_height = 0.02;  // extra depth per metre of surface height
  double stroke_speed = 0.12;   // [m/s]
  double travel_speed = 0.30;
  double plunge_time = 0.15;    // [s] press/lift transitions
  double settle_time = 0.40;    // [s] initial hold at the approach point

  static TaskGeometry from_config(const Config& cfg);
};

// Deterministic waypoint list for one glyph from the built-in template set
// {A,B,C,X,Y,Z,wipe}. Throws UnknownGlyph.
ExpertScript glyph_script(const std::string& glyph, const Environment& env,
                          const TaskGeometry& geo = {});

int glyph_stroke_count(const std::string& glyph);

// 4ch bilateral law: position symmetry (Eq-1 style goal θ_l−θ_f→0) plus force
// reflection (τ_l+τ_f→0). Pure function of the two robot states.
std::pair<JointVec, JointVec> fourch_torques(const RobotState& leader,
                                             const RobotState& follower,
                                             const BilateralGains& gains);

struct DemoOptions {
  BilateralGains gains;
  ExpertGains expert;
  ArmParams arm;
};

// Runs one bilateral demonstration: the expert tracks the script on the
// leader, the follower is teleoperated through fourch_torques in the task
// environment. duration must be a multiple of dt; the log holds
// duration/dt + 1 samples per robot.
DemoLog run_demo(const ExpertScript& script, const Environment& env, double duration,
                 std::uint64_t seed, const DemoOptions& opt = {});

// Columnar text persistence (bit-exact round trip) plus a key-value sidecar
// (path + ".meta") carrying env, seed and task.
void save_demolog(const DemoLog& log, const std::string& path);
DemoLog load_demolog(const std::string& path);

}  // namespace bcil
