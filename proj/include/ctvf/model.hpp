#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ctvf/linalg.hpp"
#include "ctvf/rng.hpp"

namespace ctvf {

/// Axis-aligned box used for both the compact state domain X and the
/// control set U.
struct Box {
  Vec lo;
  Vec hi;

  Eigen::Index dim() const { return lo.size(); }

  Vec clip(const Vec& v) const {
    return v.cwiseMax(lo).cwiseMin(hi);
  }

  bool contains(const Vec& v, double tol = 0.0) const {
    return (v.array() >= lo.array() - tol).all() &&
           (v.array() <= hi.array() + tol).all();
  }

  static Box symmetric(const Vec& half_width) {
    return Box{-half_width, half_width};
  }
};

/// Controlled SDE dx = h(x,u) dt + eta(x,u) dw together with its domain
/// boxes. When control_affine is set, h(x,u) = f(x) + g(x) u holds.
struct SdeModel {
  int n_x = 0;
  int n_u = 0;
  int n_w = 0;
  std::function<Vec(const Vec&, const Vec&)> drift;     // h(x, u)
  std::function<Mat(const Vec&, const Vec&)> diffusion; // eta(x, u), n_x x n_w

  bool control_affine = false;
  std::function<Vec(const Vec&)> f;  // drift part independent of u
  std::function<Mat(const Vec&)> g;  // control channel, n_x x n_u

  bool diagonal_noise = false;  // eta(x,u) eta(x,u)' diagonal for all (x,u)
  bool zero_noise = false;      // eta identically zero

  Box state_domain;
  Box control_box;
};

struct Policy {
  enum class Kind { HandCoded, KernelExpansion, QpCertified };

  Kind kind = Kind::HandCoded;
  std::string name;
  std::function<Vec(const Vec&)> act;

  Vec operator()(const Vec& x) const { return act(x); }
};

/// Policy plugged into a model: exposes the closed-loop drift h^phi and the
/// diffusion outer product A^phi = eta^phi eta^phi'.
struct ClosedLoop {
  SdeModel model;
  Policy policy;

  Vec drift(const Vec& x) const { return model.drift(x, policy.act(x)); }

  Mat diffusion(const Vec& x) const { return model.diffusion(x, policy.act(x)); }

  Mat noise_outer(const Vec& x) const {
    if (model.zero_noise) return Mat::Zero(model.n_x, model.n_x);
    Mat eta = diffusion(x);
    return eta * eta.transpose();
  }

  /// Diagonal of A^phi(x); the Gaussian derived kernel consumes only this.
  Vec noise_diag(const Vec& x) const {
    if (model.zero_noise) return Vec::Zero(model.n_x);
    return noise_outer(x).diagonal();
  }
};

/// Immediate cost R(x,u) plus the learning-relevant scalars: the CT discount
/// beta and the observation noise level mu_o. If the quadratic control form
/// is declared then R(x,u) = Q(x) + u'Mu/2 exactly.
struct CostModel {
  std::function<double(const Vec&)> state_cost;  // Q(x)
  Mat control_weight;                            // M, n_u x n_u SPD
  double discount = 0.0;                         // beta, 1/s
  double noise_std = 0.0;                        // mu_o
  bool quadratic_control = true;
  std::function<double(const Vec&, const Vec&)> full_cost;  // overrides Q + u'Mu/2

  double cost(const Vec& x, const Vec& u) const {
    if (full_cost) return full_cost(x, u);
    return state_cost(x) + 0.5 * u.dot(control_weight * u);
  }
};

struct TrajectorySample {
  double t = 0.0;
  Vec x;
  Vec u;
  double cost = 0.0;  // observed immediate cost at (x, u)
};

/// Recorded closed-loop run. Samples include the terminal state (its control
/// and cost are evaluated but no step is taken from it), so a run of N steps
/// holds N+1 samples and N transitions.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  double dt = 0.0;  // control-cycle metadata, seconds

  int transition_count() const {
    return samples.empty() ? 0 : static_cast<int>(samples.size()) - 1;
  }
};

/// One Euler-Maruyama step x + h^phi(x) dt + sqrt(dt) eta^phi(x) eps_w,
/// clipped to the model's state domain.
inline Vec euler_maruyama_step(const ClosedLoop& cl, const Vec& x, double dt,
                               RngStream& rng) {
  if (!(dt > 0.0)) throw DimensionMismatchError("euler_maruyama_step: dt must be > 0");
  if (!is_finite(x)) throw NonFiniteError("euler_maruyama_step: non-finite state");
  Vec next = x + cl.drift(x) * dt;
  if (!cl.model.zero_noise) {
    Vec eps = standard_normal(rng, cl.model.n_w);
    next += std::sqrt(dt) * (cl.diffusion(x) * eps);
  }
  if (!is_finite(next))
    throw NonFiniteError("euler_maruyama_step: step produced NaN/Inf");
  return cl.model.state_domain.clip(next);
}

/// Observed cost d = R(x,u) + mu_o * eps.
inline double observe_cost(const CostModel& cm, const Vec& x, const Vec& u,
                           RngStream& rng) {
  double value = cm.cost(x, u);
  if (cm.noise_std > 0.0) value += cm.noise_std * rng.normal();
  return value;
}

using StopPredicate = std::function<bool(const Vec&)>;

/// Simulates the closed loop from x0, recording (t, x, u, observed cost) at
/// every control cycle until the horizon elapses or `stop` fires on a state.
inline Trajectory rollout(const ClosedLoop& cl, const CostModel& cm, const Vec& x0,
                          double dt, double horizon, const StopPredicate& stop,
                          RngStream& rng) {
  if (!(dt > 0.0) || horizon < dt)
    throw DimensionMismatchError("rollout: need dt > 0 and horizon >= dt");
  Trajectory traj;
  traj.dt = dt;
  const int steps = static_cast<int>(std::floor(horizon / dt + 0.5));
  Vec x = cl.model.state_domain.clip(x0);
  for (int n = 0;; ++n) {
    TrajectorySample s;
    s.t = n * dt;
    s.x = x;
    s.u = cl.policy.act(x);
    s.cost = observe_cost(cm, x, s.u, rng);
    traj.samples.push_back(std::move(s));
    if (n >= steps || (stop && stop(x))) break;
    x = euler_maruyama_step(cl, x, dt, rng);
  }
  return traj;
}

}  // namespace ctvf
