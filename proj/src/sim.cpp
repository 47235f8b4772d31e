#include "pegsim/sim.hpp"

#include <cmath>
#include <random>

namespace pegsim {

namespace {

void update_peaks(ResponseVector& peak, const ResponseVector& F) {
  peak.F_x = std::max(peak.F_x, std::abs(F.F_x));
  peak.F_y = std::max(peak.F_y, std::abs(F.F_y));
  peak.F_z = std::max(peak.F_z, std::abs(F.F_z));
  peak.M_x = std::max(peak.M_x, std::abs(F.M_x));
  peak.M_y = std::max(peak.M_y, std::abs(F.M_y));
}

bool inside_rest_band(const ResponseVector& F, const Geometry& g,
                      const BoundaryTolerances& tol) {
  const double m_band = tol.eps_force * g.R;
  return std::abs(F.F_x) <= tol.eps_force &&
         std::abs(F.F_y) <= tol.eps_force && std::abs(F.M_x) <= m_band &&
         std::abs(F.M_y) <= m_band;
}

// Identity hook between the sensed wrench and the control law; a hardware
// backend would subtract sensor bias and payload terms here.
const ResponseVector& dynamic_compensation(const ResponseVector& F) {
  return F;
}

StepResult open_loop_step(const ControllerState& st, const Geometry& g) {
  ControllerState next = st;
  Vec5 rfr = st.x_rfr.vec();
  rfr[2] = std::min(rfr[2] + st.v_feed * st.dt, g.L);
  next.x_rfr = FeatureVector::from_vec(rfr);
  return {next.x_rfr, next, FeatureVector{}};
}

// Uniform on (-range, range), built from raw engine words so draws are
// reproducible across standard libraries.
double uniform_pm(std::mt19937_64& rng, double range) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return (2.0 * u - 1.0) * range;
}

}  // namespace

void Scenario::validate() const {
  geometry.validate();
  params.validate();
  quadrature.validate();
  tol.validate();
  if (initial_deviation.l != 0.0) {
    throw DomainError("initial deviation must start above the hole (l = 0)");
  }
  if (std::abs(initial_deviation.d_x) > workspace_pos ||
      std::abs(initial_deviation.d_y) > workspace_pos ||
      std::abs(initial_deviation.theta_x) > workspace_ang ||
      std::abs(initial_deviation.theta_y) > workspace_ang) {
    throw DomainError("initial deviation outside the declared workspace");
  }
  if (!(target_depth > 0.0) || target_depth > geometry.L) {
    throw DomainError("target depth must lie in (0, hole depth]");
  }
  if (!(dt > 0.0) || !(duration > 0.0)) {
    throw DomainError("timing values must be positive");
  }
  if (!(v_feed >= 0.0)) throw DomainError("feed rate must be >= 0");
  if (!(depth_tolerance >= 0.0)) {
    throw DomainError("depth tolerance must be >= 0");
  }
  if (!(F_limit > 0.0) || !(M_limit > 0.0)) {
    throw DomainError("abort limits must be positive");
  }
}

RunResult run_scenario(const Scenario& sc) {
  sc.validate();

  ControllerState st;
  st.x_rfr = sc.initial_deviation;
  st.params = sc.params;
  st.dt = sc.dt;
  st.x_d_limit = sc.x_d_limit;
  st.F_limit = sc.F_limit;
  st.M_limit = sc.M_limit;
  st.v_feed = sc.v_feed;

  FeatureVector x_act = sc.initial_deviation;
  FeatureVector x_d_last;
  const long n_steps = std::lround(sc.duration / sc.dt);

  RunResult out;
  RunMetrics& m = out.metrics;
  for (long i = 0;; ++i) {
    const double t = static_cast<double>(i) * sc.dt;
    const ResponseVector F =
        dynamic_compensation(respond(x_act, sc.geometry, sc.quadrature));

    TrajectoryRecord rec;
    rec.t = t;
    rec.x_cmd = x_act;
    rec.x_act = x_act;
    rec.F_ext = F;
    rec.state_xoz = classify_responses(Plane::XOZ, F.F_x, F.F_z, F.M_y,
                                       x_act.l, sc.geometry, sc.tol);
    rec.state_yoz = classify_responses(Plane::YOZ, F.F_y, F.F_z, F.M_x,
                                       x_act.l, sc.geometry, sc.tol);
    rec.x_d = x_d_last;
    rec.gamma = gamma(x_act.l, sc.geometry);
    out.trajectory.push_back(rec);
    update_peaks(m.peak, F);

    const StepVerdict verdict = should_terminate(
        st, F, x_act.l, sc.target_depth, sc.depth_tolerance);
    if (verdict == StepVerdict::success) {
      m.success = true;
      break;
    }
    if (verdict == StepVerdict::force_abort) {
      m.abort_reason = "force_abort";
      break;
    }
    if (i >= n_steps) {
      m.abort_reason = "duration_exhausted";
      break;
    }

    StepResult sr;
    switch (sc.controller) {
      case ControllerKind::fbcc:
        sr = fbcc_step(st, F, x_act.l, sc.geometry);
        break;
      case ControllerKind::admittance:
        sr = admittance_step(st, F, x_act.l, sc.geometry);
        break;
      case ControllerKind::open_loop:
        sr = open_loop_step(st, sc.geometry);
        break;
    }
    st = sr.next;
    x_act = sr.x_c;
    x_d_last = sr.x_d;
  }

  const TrajectoryRecord& last = out.trajectory.back();
  m.terminal = last.F_ext;
  m.terminal_deviation = last.x_act;
  m.terminal_deviation.l = sc.target_depth - last.x_act.l;
  m.end_time = last.t;

  const double theta0 = std::abs(sc.initial_deviation.theta_y);
  double worst = theta0;
  double worst_signed = 0.0;
  for (const TrajectoryRecord& r : out.trajectory) {
    const double mag = std::abs(r.x_act.theta_y);
    if (mag > worst) {
      worst = mag;
      worst_signed = std::copysign(mag - theta0, r.x_act.theta_y);
    }
  }
  m.overshoot_theta_y = worst_signed;

  m.settling_time = -1.0;
  for (std::size_t i = out.trajectory.size(); i-- > 0;) {
    if (!inside_rest_band(out.trajectory[i].F_ext, sc.geometry, sc.tol)) {
      break;
    }
    m.settling_time = out.trajectory[i].t;
  }
  return out;
}

SweepReport run_sweep(const Scenario& tmpl, const SweepSpec& sp) {
  if (sp.n < 1) throw DomainError("sweep needs at least one trial");
  if (!(sp.position_range >= 0.0) || !(sp.angle_range >= 0.0)) {
    throw DomainError("sweep ranges must be >= 0");
  }

  SweepReport rep;
  rep.n = sp.n;
  rep.deviations.reserve(sp.n);
  rep.runs.reserve(sp.n);

  int successes = 0;
  double fz_min = 0.0, fz_max = 0.0, fz_sum = 0.0;
  for (int i = 0; i < sp.n; ++i) {
    std::mt19937_64 rng(tmpl.seed ^
                        (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(i) + 1)));
    Scenario sc = tmpl;
    if (sp.position_range > 0.0) {
      sc.initial_deviation.d_x = uniform_pm(rng, sp.position_range);
      sc.initial_deviation.d_y = uniform_pm(rng, sp.position_range);
    }
    if (sp.angle_range > 0.0) {
      sc.initial_deviation.theta_x = uniform_pm(rng, sp.angle_range);
      sc.initial_deviation.theta_y = uniform_pm(rng, sp.angle_range);
    }
    RunResult res = run_scenario(sc);
    if (res.metrics.success) ++successes;
    const double fz = res.metrics.peak.F_z;
    fz_min = (i == 0) ? fz : std::min(fz_min, fz);
    fz_max = std::max(fz_max, fz);
    fz_sum += fz;
    rep.deviations.push_back(sc.initial_deviation);
    rep.runs.push_back(std::move(res.metrics));
  }
  rep.success_rate = static_cast<double>(successes) / sp.n;
  rep.peak_F_z_min = fz_min;
  rep.peak_F_z_max = fz_max;
  rep.peak_F_z_mean = fz_sum / sp.n;
  return rep;
}

std::vector<ReplayRecord> replay_feature_trajectory(
    const std::vector<FeatureVector>& path, const Geometry& g,
    const QuadratureSpec& q, const BoundaryTolerances& tol) {
  std::vector<ReplayRecord> out;
  out.reserve(path.size());
  for (const FeatureVector& x : path) {
    const AgreementReport rep = consistency_check(x, g, q, tol);
    ReplayRecord r;
    r.x = x;
    r.F_ext = rep.wrench;
    r.feature_xoz = rep.xoz.feature_label;
    r.feature_yoz = rep.yoz.feature_label;
    r.response_xoz = rep.xoz.response_label;
    r.response_yoz = rep.yoz.response_label;
    r.u_xoz = rep.xoz.u;
    r.v_xoz = rep.xoz.v;
    r.u_yoz = rep.yoz.u;
    r.v_yoz = rep.yoz.v;
    out.push_back(r);
  }
  return out;
}

}  // namespace pegsim
