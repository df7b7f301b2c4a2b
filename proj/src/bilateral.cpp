#include "bcil/bilateral.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "bcil/errors.hpp"

namespace bcil {

namespace {

// Fraction of the segment path covered at normalized time s in [0,1]:
// trapezoidal speed with 1/4 accel, 1/2 cruise, 1/4 decel.
double trapezoid_fraction(double s) {
  s = std::clamp(s, 0.0, 1.0);
  const double a = 0.25;
  const double vmax = 1.0 / (1.0 - a);  // integral normalizes to 1
  if (s < a) return 0.5 * vmax * s * s / a;
  if (s < 1.0 - a) return 0.5 * vmax * a + vmax * (s - a);
  const double r = 1.0 - s;
  return 1.0 - 0.5 * vmax * r * r / a;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

double parse_double(const std::string& s) {
  double v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(ErrorKind::Io, "bad numeric field: " + s);
  return v;
}

}  // namespace

BilateralGains BilateralGains::from_config(const Config& cfg) {
  BilateralGains g;
  g.kp = cfg.get_num("bilateral.kp", g.kp);
  g.kd = cfg.get_num("bilateral.kd", g.kd);
  g.kf = cfg.get_num("bilateral.kf", g.kf);
  return g;
}

ExpertGains ExpertGains::from_config(const Config& cfg) {
  ExpertGains g;
  g.kp = cfg.get_num("expert.kp", g.kp);
  g.kd = cfg.get_num("expert.kd", g.kd);
  g.ref_noise_sigma = cfg.get_num("expert.ref_noise_sigma", g.ref_noise_sigma);
  return g;
}

TaskGeometry TaskGeometry::from_config(const Config& cfg) {
  TaskGeometry t;
  t.x0 = cfg.get_num("task.x0", t.x0);
  t.width = cfg.get_num("task.width", t.width);
  t.lift = cfg.get_num("task.lift", t.lift);
  t.press_depth_base = cfg.get_num("task.press_depth_base", t.press_depth_base);
  t.press_depth_per_height = cfg.get_num("task.press_depth_per_height", t.press_depth_per_height);
  t.stroke_speed = cfg.get_num("task.stroke_speed", t.stroke_speed);
  t.travel_speed = cfg.get_num("task.travel_speed", t.travel_speed);
  t.plunge_time = cfg.get_num("task.plunge_time", t.plunge_time);
  t.settle_time = cfg.get_num("task.settle_time", t.settle_time);
  return t;
}

Vec2 ExpertScript::reference(double t, const Environment& env, bool* press) const {
  if (waypoints.empty()) fail(ErrorKind::TooShort, "empty expert script");
  const Vec2 n = env.normal();
  auto materialize = [&](const Waypoint& w) { return env.point_at_x(w.x) + w.normal_offset * n; };

  if (t <= waypoints.front().t) {
    if (press) *press = waypoints.front().press;
    return materialize(waypoints.front());
  }
  if (t >= waypoints.back().t) {
    if (press) *press = waypoints.back().press;
    return materialize(waypoints.back());
  }
  size_t i = 1;
  while (waypoints[i].t < t) ++i;
  const Waypoint& a = waypoints[i - 1];
  const Waypoint& b = waypoints[i];
  const double s = (t - a.t) / (b.t - a.t);
  const double f = trapezoid_fraction(s);
  if (press) *press = a.press && b.press;
  return materialize(a) * (1.0 - f) + materialize(b) * f;
}

namespace {

// Stroke patterns as positions in [0,1] along the writing span. Letters are
// polyline abstractions of the printed templates; 'wipe' is three directional
// passes over the full span.
const std::vector<std::vector<double>>& glyph_strokes(const std::string& glyph) {
  static const std::map<std::string, std::vector<std::vector<double>>> table = {
      {"A", {{0.0, 0.5}, {0.5, 1.0}, {0.2, 0.8}}},
      {"B", {{0.0, 1.0}, {1.0, 0.55}, {0.45, 0.0}}},  // spine + two bowls
      {"C", {{0.9, 0.1}}},
      {"X", {{0.0, 1.0}, {1.0, 0.0}}},
      {"Y", {{0.0, 0.5}, {1.0, 0.5}, {0.5, 0.85}}},
      {"Z", {{0.05, 0.95}, {0.95, 0.05}, {0.05, 0.95}}},
      {"wipe", {{0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}}},
  };
  auto it = table.find(glyph);
  if (it == table.end()) fail(ErrorKind::UnknownGlyph, "no template for glyph '" + glyph + "'");
  return it->second;
}

}  // namespace

int glyph_stroke_count(const std::string& glyph) {
  return static_cast<int>(glyph_strokes(glyph).size());
}

ExpertScript glyph_script(const std::string& glyph, const Environment& env,
                          const TaskGeometry& geo) {
  const auto& strokes = glyph_strokes(glyph);
  const double press_depth =
      geo.press_depth_base + geo.press_depth_per_height * env.surface_height;

  ExpertScript script;
  double t = 0.0;
  auto add = [&](double x_frac, double offset, bool press, double dt_seg) {
    t += dt_seg;
    script.waypoints.push_back({t, geo.x0 + x_frac * geo.width, offset, press});
  };

  // approach hold above the first stroke
  script.waypoints.push_back({0.0, geo.x0 + strokes[0][0] * geo.width, geo.lift, false});
  add(strokes[0][0], geo.lift, false, geo.settle_time);

  double prev_end = strokes[0][0];
  for (size_t s = 0; s < strokes.size(); ++s) {
    const auto& stroke = strokes[s];
    const double travel = std::abs(stroke[0] - prev_end) * geo.width;
    if (travel > 1e-12)
      add(stroke[0], geo.lift, false, std::max(0.1, travel / geo.travel_speed));
    add(stroke[0], -press_depth, true, geo.plunge_time);
    for (size_t i = 1; i < stroke.size(); ++i) {
      const double seg = std::abs(stroke[i] - stroke[i - 1]) * geo.width;
      add(stroke[i], -press_depth, true, std::max(0.1, seg / geo.stroke_speed));
    }
    add(stroke.back(), geo.lift, false, geo.plunge_time);
    prev_end = stroke.back();
  }
  return script;
}

std::pair<JointVec, JointVec> fourch_torques(const RobotState& leader,
                                             const RobotState& follower,
                                             const BilateralGains& g) {
  const JointVec e = leader.theta - follower.theta;
  const JointVec edot = leader.theta_dot - follower.theta_dot;
  const JointVec s = leader.tau + follower.tau;
  const JointVec pos = g.kp * e + g.kd * edot;
  return {-pos - g.kf * s, pos + g.kf * s};
}

DemoLog run_demo(const ExpertScript& script, const Environment& env, double duration,
                 std::uint64_t seed, const DemoOptions& opt) {
  const double dt = 0.001;
  const double steps_f = duration / dt;
  const long steps = std::lround(steps_f);
  if (std::abs(steps_f - static_cast<double>(steps)) > 1e-6)
    fail(ErrorKind::Usage, "demo duration must be a multiple of 1 ms");

  Plant plant(opt.arm);
  Environment free_env = env;       // the leader's desk is contact-free
  free_env.surface_height = -10.0;
  free_env.plate_tilt_deg = 0.0;

  const JointVec q0 = plant.inverse_kinematics(script.reference(0.0, env));
  PlantState leader = plant.make_state(q0, JointVec::Zero(), free_env);
  PlantState follower = plant.make_state(q0, JointVec::Zero(), env);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  JointVec noise = JointVec::Zero();
  const double ou_decay = 0.995;
  const double ou_step = opt.expert.ref_noise_sigma * std::sqrt(1.0 - ou_decay * ou_decay);

  DemoLog log;
  log.dt = dt;
  log.env = env;
  log.seed = seed;
  log.leader.reserve(steps + 1);
  log.follower.reserve(steps + 1);

  JointVec q_ref_prev = q0;
  for (long i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * dt;

    noise = ou_decay * noise + ou_step * JointVec(gauss(rng), gauss(rng));
    JointVec q_ref = plant.inverse_kinematics(script.reference(t, env)) + noise;
    const JointVec qdot_ref = (q_ref - q_ref_prev) / dt;
    q_ref_prev = q_ref;

    const JointVec tau_h = opt.expert.kp * (q_ref - leader.q) +
                           opt.expert.kd * (qdot_ref - leader.qdot);

    double fn = 0.0;
    const Vec2 fc = plant.contact_force(follower.q, follower.qdot, env, &fn);
    const JointVec tau_env = plant.jacobian(follower.q).transpose() * fc;

    RobotState ls{leader.q, leader.qdot, tau_h};
    RobotState fs{follower.q, follower.qdot, tau_env};
    log.leader.push_back(ls);
    log.follower.push_back(fs);
    if (i == steps) break;

    auto [tau_l_cmd, tau_f_cmd] = fourch_torques(ls, fs, opt.gains);
    leader = plant.forward_dynamics(leader, tau_l_cmd + tau_h, free_env, dt);
    follower = plant.forward_dynamics(follower, tau_f_cmd, env, dt);
  }
  return log;
}

void save_demolog(const DemoLog& log, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail(ErrorKind::Io, "cannot write " + path);
  f << "t";
  for (const char* robot : {"l", "f"})
    for (const char* field : {"theta", "theta_dot", "tau"})
      for (int j = 0; j < kDof; ++j) f << " " << field << "_" << robot << j;
  f << "\n";
  for (size_t i = 0; i < log.leader.size(); ++i) {
    f << format_double(static_cast<double>(i) * log.dt);
    for (const RobotState* r : {&log.leader[i], &log.follower[i]}) {
      for (int j = 0; j < kDof; ++j) f << " " << format_double(r->theta[j]);
      for (int j = 0; j < kDof; ++j) f << " " << format_double(r->theta_dot[j]);
      for (int j = 0; j < kDof; ++j) f << " " << format_double(r->tau[j]);
    }
    f << "\n";
  }
  std::ofstream m(path + ".meta");
  if (!m) fail(ErrorKind::Io, "cannot write " + path + ".meta");
  m << "task = " << log.task << "\n";
  m << "seed = " << log.seed << "\n";
  m << "dt = " << format_double(log.dt) << "\n";
  m << "samples = " << log.leader.size() << "\n";
  m << "[env]\n";
  m << "surface_height = " << format_double(log.env.surface_height) << "\n";
  m << "plate_tilt_deg = " << format_double(log.env.plate_tilt_deg) << "\n";
  m << "tilt_pivot_x = " << format_double(log.env.tilt_pivot_x) << "\n";
  m << "stiffness = " << format_double(log.env.stiffness) << "\n";
  m << "damping = " << format_double(log.env.damping) << "\n";
  m << "friction_coeff = " << format_double(log.env.friction_coeff) << "\n";
}

DemoLog load_demolog(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::Io, "cannot open " + path);
  DemoLog log;
  std::string line;
  if (!std::getline(f, line)) fail(ErrorKind::Io, "empty demo log " + path);
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream in(line);
    std::string tok;
    std::vector<double> v;
    while (in >> tok) v.push_back(parse_double(tok));
    if (v.size() != 1 + 2 * 3 * kDof) fail(ErrorKind::Io, "bad row width in " + path);
    RobotState l, r;
    int k = 1;
    for (int j = 0; j < kDof; ++j) l.theta[j] = v[k++];
    for (int j = 0; j < kDof; ++j) l.theta_dot[j] = v[k++];
    for (int j = 0; j < kDof; ++j) l.tau[j] = v[k++];
    for (int j = 0; j < kDof; ++j) r.theta[j] = v[k++];
    for (int j = 0; j < kDof; ++j) r.theta_dot[j] = v[k++];
    for (int j = 0; j < kDof; ++j) r.tau[j] = v[k++];
    log.leader.push_back(l);
    log.follower.push_back(r);
  }
  Config meta = Config::load(path + ".meta");
  log.task = meta.get_str("task", "");
  log.seed = static_cast<std::uint64_t>(meta.get_int("seed", 0));
  log.dt = meta.get_num("dt", 0.001);
  log.env.surface_height = meta.get_num("env.surface_height", log.env.surface_height);
  log.env.plate_tilt_deg = meta.get_num("env.plate_tilt_deg", log.env.plate_tilt_deg);
  log.env.tilt_pivot_x = meta.get_num("env.tilt_pivot_x", log.env.tilt_pivot_x);
  log.env.stiffness = meta.get_num("env.stiffness", log.env.stiffness);
  log.env.damping = meta.get_num("env.damping", log.env.damping);
  log.env.friction_coeff = meta.get_num("env.friction_coeff", log.env.friction_coeff);
  return log;
}

}  // namespace bcil
