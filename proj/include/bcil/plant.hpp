#pragma once

#include <Eigen/Dense>

#include "bcil/config.hpp"

namespace bcil {

// Joint-space vector of the 2-DOF arm (rad, rad/s or N·m depending on use).
using JointVec = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;

constexpr int kDof = 2;

struct ArmParams {
  double l1 = 0.3;   // link lengths [m]
  double l2 = 0.25;
  double m1 = 1.0;   // link masses [kg], uniform rods
  double m2 = 0.8;
  double joint_damping = 0.05;  // viscous [N·m·s/rad]

  static ArmParams from_config(const Config& cfg);
};

// Contact surface: the line y = surface_height + tan(plate_tilt)·(x − tilt_pivot_x)
// in the arm plane. Penetration is measured along the line normal.
struct Environment {
  double surface_height = 0.045;  // [m]
  double plate_tilt_deg = 0.0;
  double tilt_pivot_x = 0.25;     // [m]
  double stiffness = 1000.0;      // [N/m]
  double damping = 30.0;          // [N·s/m], scaled by penetration depth
  double friction_coeff = 0.4;

  static Environment from_config(const Config& cfg);

  Eigen::Vector2d normal() const;           // unit normal, points away from the surface
  double signed_distance(const Vec2& p) const;  // > 0 above the surface
  Vec2 point_at_x(double x) const;          // point on the surface line
};

struct PlantState {
  JointVec q = JointVec::Zero();
  JointVec qdot = JointVec::Zero();
  Vec2 tip = Vec2::Zero();                 // derived: forward kinematics of q
  double contact_normal_force = 0.0;       // [N], 0 when tip above surface
};

class Plant {
 public:
  explicit Plant(ArmParams params) : p_(params) {}

  const ArmParams& params() const { return p_; }

  Vec2 forward_kinematics(const JointVec& q) const;
  Vec2 tip_velocity(const JointVec& q, const JointVec& qdot) const;
  Eigen::Matrix2d jacobian(const JointVec& q) const;

  // elbow = +1 or -1 selects the IK branch. Throws Unreachable.
  JointVec inverse_kinematics(const Vec2& target, int elbow = +1) const;

  Eigen::Matrix2d mass_matrix(const JointVec& q) const;
  JointVec coriolis(const JointVec& q, const JointVec& qdot) const;

  // Contact wrench at the tip for the given state; zero when not penetrating.
  // Returns planar force; normal_force receives the (non-negative) normal part.
  Vec2 contact_force(const JointVec& q, const JointVec& qdot, const Environment& env,
                     double* normal_force = nullptr) const;

  // Rebuilds derived fields (tip, contact force) for given q/qdot.
  PlantState make_state(const JointVec& q, const JointVec& qdot, const Environment& env) const;

  // One semi-implicit Euler step. Throws NonFinite when integration blows up.
  PlantState forward_dynamics(const PlantState& state, const JointVec& torque_cmd,
                              const Environment& env, double dt) const;

  // Kinetic energy (no gravity in the model).
  double energy(const JointVec& q, const JointVec& qdot) const;

 private:
  ArmParams p_;
};

}  // namespace bcil
