#include "bcil/plant.hpp"

#include <cmath>

#include "bcil/errors.hpp"

namespace bcil {

ArmParams ArmParams::from_config(const Config& cfg) {
  ArmParams p;
  p.l1 = cfg.get_num("plant.l1", p.l1);
  p.l2 = cfg.get_num("plant.l2", p.l2);
  p.m1 = cfg.get_num("plant.m1", p.m1);
  p.m2 = cfg.get_num("plant.m2", p.m2);
  p.joint_damping = cfg.get_num("plant.joint_damping", p.joint_damping);
  return p;
}

Environment Environment::from_config(const Config& cfg) {
  Environment e;
  e.surface_height = cfg.get_num("env.surface_height", e.surface_height);
  e.plate_tilt_deg = cfg.get_num("env.plate_tilt_deg", e.plate_tilt_deg);
  e.tilt_pivot_x = cfg.get_num("env.tilt_pivot_x", e.tilt_pivot_x);
  e.stiffness = cfg.get_num("env.stiffness", e.stiffness);
  e.damping = cfg.get_num("env.damping", e.damping);
  e.friction_coeff = cfg.get_num("env.friction_coeff", e.friction_coeff);
  return e;
}

Eigen::Vector2d Environment::normal() const {
  const double th = plate_tilt_deg * M_PI / 180.0;
  return {-std::sin(th), std::cos(th)};
}

double Environment::signed_distance(const Vec2& p) const {
  return (p - point_at_x(tilt_pivot_x)).dot(normal());
}

Vec2 Environment::point_at_x(double x) const {
  const double th = plate_tilt_deg * M_PI / 180.0;
  return {x, surface_height + std::tan(th) * (x - tilt_pivot_x)};
}

Vec2 Plant::forward_kinematics(const JointVec& q) const {
  const double a = q[0], b = q[0] + q[1];
  return {p_.l1 * std::cos(a) + p_.l2 * std::cos(b), p_.l1 * std::sin(a) + p_.l2 * std::sin(b)};
}

Eigen::Matrix2d Plant::jacobian(const JointVec& q) const {
  const double a = q[0], b = q[0] + q[1];
  Eigen::Matrix2d J;
  J << -p_.l1 * std::sin(a) - p_.l2 * std::sin(b), -p_.l2 * std::sin(b),
       p_.l1 * std::cos(a) + p_.l2 * std::cos(b), p_.l2 * std::cos(b);
  return J;
}

Vec2 Plant::tip_velocity(const JointVec& q, const JointVec& qdot) const {
  return jacobian(q) * qdot;
}

JointVec Plant::inverse_kinematics(const Vec2& target, int elbow) const {
  const double r2 = target.squaredNorm();
  const double r = std::sqrt(r2);
  const double lo = std::abs(p_.l1 - p_.l2), hi = p_.l1 + p_.l2;
  if (r < lo - 1e-12 || r > hi + 1e-12)
    fail(ErrorKind::Unreachable, "IK target radius outside reachable annulus");
  double c2 = (r2 - p_.l1 * p_.l1 - p_.l2 * p_.l2) / (2.0 * p_.l1 * p_.l2);
  c2 = std::clamp(c2, -1.0, 1.0);
  const double q2 = (elbow >= 0 ? 1.0 : -1.0) * std::acos(c2);
  const double q1 = std::atan2(target.y(), target.x()) -
                    std::atan2(p_.l2 * std::sin(q2), p_.l1 + p_.l2 * std::cos(q2));
  return {q1, q2};
}

Eigen::Matrix2d Plant::mass_matrix(const JointVec& q) const {
  const double lc1 = p_.l1 / 2, lc2 = p_.l2 / 2;
  const double i1 = p_.m1 * p_.l1 * p_.l1 / 12.0, i2 = p_.m2 * p_.l2 * p_.l2 / 12.0;
  const double c2 = std::cos(q[1]);
  Eigen::Matrix2d M;
  const double m12 = i2 + p_.m2 * (lc2 * lc2 + p_.l1 * lc2 * c2);
  M(0, 0) = i1 + i2 + p_.m1 * lc1 * lc1 +
            p_.m2 * (p_.l1 * p_.l1 + lc2 * lc2 + 2.0 * p_.l1 * lc2 * c2);
  M(0, 1) = m12;
  M(1, 0) = m12;
  M(1, 1) = i2 + p_.m2 * lc2 * lc2;
  return M;
}

JointVec Plant::coriolis(const JointVec& q, const JointVec& qdot) const {
  const double h = p_.m2 * p_.l1 * (p_.l2 / 2) * std::sin(q[1]);
  return {-h * qdot[1] * (2.0 * qdot[0] + qdot[1]), h * qdot[0] * qdot[0]};
}

Vec2 Plant::contact_force(const JointVec& q, const JointVec& qdot, const Environment& env,
                          double* normal_force) const {
  const Vec2 tip = forward_kinematics(q);
  const double d = env.signed_distance(tip);
  if (normal_force) *normal_force = 0.0;
  if (d >= 0.0) return Vec2::Zero();

  const double depth = -d;
  const Vec2 n = env.normal();
  const Vec2 v = tip_velocity(q, qdot);
  const double vn = v.dot(n);
  // depth-scaled damping keeps the force continuous at first touch
  double fn = env.stiffness * depth + env.damping * depth * (-vn);
  fn = std::max(fn, 0.0);

  const Vec2 t{n.y(), -n.x()};
  const double vt = v.dot(t);
  const double ft = -env.friction_coeff * fn * std::tanh(vt / 0.005);

  if (normal_force) *normal_force = fn;
  return fn * n + ft * t;
}

PlantState Plant::make_state(const JointVec& q, const JointVec& qdot,
                             const Environment& env) const {
  PlantState s;
  s.q = q;
  s.qdot = qdot;
  s.tip = forward_kinematics(q);
  contact_force(q, qdot, env, &s.contact_normal_force);
  return s;
}

PlantState Plant::forward_dynamics(const PlantState& state, const JointVec& torque_cmd,
                                   const Environment& env, double dt) const {
  const Vec2 fc = contact_force(state.q, state.qdot, env);
  const JointVec tau_contact = jacobian(state.q).transpose() * fc;
  const JointVec rhs = torque_cmd + tau_contact - coriolis(state.q, state.qdot) -
                       p_.joint_damping * state.qdot;
  const JointVec qddot = mass_matrix(state.q).ldlt().solve(rhs);

  JointVec qdot = state.qdot + dt * qddot;
  JointVec q = state.q + dt * qdot;
  if (!q.allFinite() || !qdot.allFinite())
    fail(ErrorKind::NonFinite, "plant integration produced NaN/Inf");
  return make_state(q, qdot, env);
}

double Plant::energy(const JointVec& q, const JointVec& qdot) const {
  return 0.5 * qdot.dot(mass_matrix(q) * qdot);
}

}  // namespace bcil
