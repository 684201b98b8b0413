#include "pegfinder/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "pegfinder/errors.hpp"

namespace pegfinder {

void TraceSettings::validate() const {
  if (!(corrector_tol > 0 && step_init > 0 && step_max > 0 && closure_tol > 0 && boundary_floor > 0 && max_steps > 0))
    throw InvalidInput("trace settings must be positive");
  if (!(corrector_tol < closure_tol)) throw InvalidInput("corrector_tol must be below closure_tol");
  if (step_init > step_max) throw InvalidInput("step_init must not exceed step_max");
}

SolverSettings TraceSettings::solver() const {
  SolverSettings s;
  s.tol = corrector_tol;
  s.boundary_floor = boundary_floor;
  return s;
}

const char* event_name(EventKind kind) {
  switch (kind) {
    case EventKind::diagonal_swap:
      return "diagonal_swap";
    case EventKind::aspect_ratio_hit:
      return "aspect_ratio_hit";
    case EventKind::planarity:
      return "planarity";
    case EventKind::isosceles_hit:
      return "isosceles_hit";
    case EventKind::boundary_approach:
      return "boundary_approach";
    case EventKind::square_on_branch:
      return "square_on_branch";
  }
  return "unknown";
}

int Branch::count(EventKind k) const {
  return static_cast<int>(std::count_if(events.begin(), events.end(), [k](const Event& e) { return e.kind == k; }));
}

namespace {

constexpr int kCorrectorIterations = 12;

// Newton on F(w) = 0, normal . (w - anchor) = 0, starting from w.
bool correct(const ResidualSystem& system, Eigen::VectorXd& w, const Eigen::VectorXd& anchor,
             const Eigen::VectorXd& normal, double tol) {
  const int n = system.domain_dim();
  const int m = system.codomain_dim();
  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  Eigen::MatrixXd a(m + 1, n);
  Eigen::VectorXd rhs(m + 1);
  for (int it = 0; it <= kCorrectorIterations; ++it) {
    system.evaluate(w, f, jac);
    const double plane = normal.dot(w - anchor);
    const double norm = f.norm();
    if (!std::isfinite(norm)) return false;
    if (norm <= tol && std::abs(plane) <= tol) return true;
    if (it == kCorrectorIterations) break;
    a.topRows(m) = jac;
    a.row(m) = normal.transpose();
    rhs.head(m) = -f;
    rhs[m] = -plane;
    const Eigen::VectorXd delta = a.partialPivLu().solve(rhs);
    if (!delta.allFinite()) return false;
    w += delta;
  }
  return false;
}

// Unit tangent at w continuing the direction `previous`.
Eigen::VectorXd tangent(const ResidualSystem& system, const Eigen::VectorXd& w, const Eigen::VectorXd& previous) {
  const int n = system.domain_dim();
  const int m = system.codomain_dim();
  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  system.evaluate(w, f, jac);
  Eigen::MatrixXd a(m + 1, n);
  a.topRows(m) = jac;
  a.row(m) = previous.transpose();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m + 1);
  e[m] = 1.0;
  Eigen::VectorXd z = a.partialPivLu().solve(e);
  return z / z.norm();
}

constexpr double kKinkStep = 1e-7;

int sign_of(double v) { return (v > 0) - (v < 0); }

// Event crossing on the segment (fa, fb]: strict sign at a, any change at b.
bool crosses(double fa, double fb) { return (fa < 0 && fb >= 0) || (fa > 0 && fb <= 0); }

Eigen::VectorXd locate_event(const ResidualSystem& system, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                             double fa, const EventFunction& fn, double tol) {
  const Eigen::VectorXd chord = b - a;
  const double length = chord.norm();
  if (length == 0.0) return b;
  const Eigen::VectorXd normal = chord / length;
  double lo = 0.0;
  double hi = 1.0;
  const int sa = sign_of(fa);
  Eigen::VectorXd best = b;
  while ((hi - lo) * length > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const Eigen::VectorXd anchor = a + mid * chord;
    Eigen::VectorXd p = anchor;
    if (!correct(system, p, anchor, normal, tol)) break;
    best = p;
    if (sign_of(fn(p)) == sa)
      lo = mid;
    else
      hi = mid;
  }
  return best;
}

struct HalfTrace {
  std::vector<Eigen::VectorXd> samples;
  std::vector<Event> events;
  bool closed = false;
  bool boundary = false;
};

HalfTrace trace_direction(const ResidualSystem& system, const Eigen::VectorXd& u0, const Eigen::VectorXd& tau0,
                          const TraceSettings& settings, const std::vector<EventSpec>& specs, long& steps) {
  HalfTrace out;
  out.samples.push_back(u0);
  Eigen::VectorXd u = u0;
  Eigen::VectorXd tau = tau0;
  double h = settings.step_init;
  int clean = 0;
  double traveled = 0.0;
  std::vector<double> values(specs.size());
  for (std::size_t k = 0; k < specs.size(); ++k) values[k] = specs[k].function(u0);

  for (;;) {
    if (++steps > settings.max_steps)
      throw NumericalFailure("branch tracing exceeded " + std::to_string(settings.max_steps) + " steps");
    const Eigen::VectorXd predicted = u + h * tau;
    Eigen::VectorXd w = predicted;
    bool ok = correct(system, w, predicted, tau, settings.corrector_tol);
    Eigen::VectorXd tau_new;
    if (ok) {
      const double moved = (w - u).norm();
      ok = moved <= 2.0 * h + kKinkStep && moved > 0.25 * h;
      if (ok) {
        tau_new = tangent(system, w, tau);
        // Piecewise smooth curves (polylines) give kinked branches; a tiny
        // step that still turns sharply is taken to straddle a kink.
        const double turn = tau_new.dot(tau);
        ok = tau_new.allFinite() && (turn > 0.9 || (h < kKinkStep && turn > 0.0));
      }
      // Never step past the boundary; the last sample lands inside the floor.
      if (ok && system.boundary_distance(w) < 0.0) ok = false;
    }
    if (!ok) {
      h *= 0.5;
      clean = 0;
      if (h < 1e-12) throw NumericalFailure("corrector diverged during branch tracing");
      continue;
    }

    const double boundary = system.boundary_distance(w);
    const double before_closure = tau0.dot(system.difference(u, u0));
    const double after_closure = tau0.dot(system.difference(w, u0));
    traveled += (w - u).norm();

    // Closure: crossing the hyperplane through u0 close to u0.
    Eigen::VectorXd closing;
    bool closes = false;
    if (traveled > 2.0 * settings.step_init && before_closure < 0.0 && after_closure >= 0.0 &&
        system.difference(w, u0).norm() < 4.0 * settings.step_max) {
      closing = w - system.difference(w, u0);
      Eigen::VectorXd y = u;
      closes = correct(system, y, closing, tau0, settings.corrector_tol) &&
               system.difference(y, u0).norm() <= settings.closure_tol;
    }
    const Eigen::VectorXd& next = closes ? closing : w;

    const int before = static_cast<int>(out.samples.size()) - 1;
    for (std::size_t k = 0; k < specs.size(); ++k) {
      const double value = specs[k].function(next);
      if (crosses(values[k], value)) {
        Event e;
        e.kind = specs[k].kind;
        e.source = static_cast<int>(k);
        e.location = locate_event(system, u, next, values[k], specs[k].function, settings.corrector_tol);
        e.before = before;
        e.after = before + 1;
        out.events.push_back(std::move(e));
      }
      values[k] = value;
    }
    out.samples.push_back(next);

    if (closes) {
      out.closed = true;
      return out;
    }
    if (boundary < settings.boundary_floor) {
      out.boundary = true;
      Event e;
      e.kind = EventKind::boundary_approach;
      e.location = w;
      e.before = before;
      e.after = before + 1;
      out.events.push_back(std::move(e));
      return out;
    }
    u = w;
    tau = tau_new;
    if (++clean >= 5) {
      h = std::min(h * 1.3, settings.step_max);
      clean = 0;
    }
  }
}

Eigen::VectorXd neighbour_tangent(const Branch& branch, std::size_t j) {
  const auto& s = branch.samples;
  const std::size_t count = s.size();
  Eigen::VectorXd d;
  if (j > 0 && j + 1 < count)
    d = s[j + 1] - s[j - 1];
  else if (j + 1 < count)
    d = s[j + 1] - s[j];
  else
    d = s[j] - s[j - 1];
  return d / d.norm();
}

}  // namespace

Branch trace_branch(const SystemPtr& input, const Eigen::VectorXd& start, const TraceSettings& settings,
                    const std::vector<EventSpec>& specs) {
  settings.validate();
  if (input->domain_dim() != input->codomain_dim() + 1)
    throw InvalidInput("branch tracing needs one more unknown than equations");
  SystemPtr system = input;
  Branch branch;
  branch.kind = input->kind();

  SolveResult polished = try_refine(*system, start, settings.solver());
  if (!polished.ok()) throw NumericalFailure("start point is not on the zero set");
  Eigen::VectorXd u0 = polished.u;

  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  system->evaluate(u0, f, jac);
  const int n = system->domain_dim();
  auto rank_of = [](const Eigen::MatrixXd& j) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> s(j);
    const auto& sv = s.singularValues();
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv[i] > 1e-8 * std::max(1.0, sv[0])) ++r;
    return r;
  };
  int rank = rank_of(jac);
  if (n - rank == 2 && system->polygonal()) {
    // Two-dimensional zero set: keep independent equations and pin v_0.
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac.transpose());
    std::vector<int> rows;
    for (int i = 0; i < rank; ++i) rows.push_back(static_cast<int>(qr.colsPermutation().indices()[i]));
    std::sort(rows.begin(), rows.end());
    Eigen::MatrixXd pin = Eigen::MatrixXd::Zero(1, n);
    pin(0, 0) = 1.0;
    system = std::make_shared<ConstrainedSystem>(std::make_shared<SelectedRowsSystem>(system, rows), pin,
                                                 Eigen::VectorXd::Constant(1, u0[0]));
    branch.gauge_pinned = true;
    system->evaluate(u0, f, jac);
    rank = rank_of(jac);
  }
  if (n - rank != 1 || jac.rows() != n - 1) throw NumericalFailure("zero set is not one-dimensional at the start point");
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
  branch.system = system;

  Eigen::VectorXd tau0 = svd.matrixV().col(n - 1);
  Eigen::MatrixXd oriented(n, n);
  oriented.topRows(n - 1) = jac;
  oriented.row(n - 1) = tau0.transpose();
  if (oriented.determinant() < 0) tau0 = -tau0;

  long steps = 0;
  HalfTrace forward = trace_direction(*system, u0, tau0, settings, specs, steps);
  if (forward.closed) {
    branch.samples = std::move(forward.samples);
    branch.events = std::move(forward.events);
    branch.closed = true;
    branch.winding = static_cast<int>(std::lround((branch.samples.back() - branch.samples.front()).mean()));
    if (!system->polygonal()) branch.winding = 0;
    branch.isotropy_order = isotropy(branch, settings);
    return branch;
  }

  HalfTrace backward = trace_direction(*system, u0, -tau0, settings, specs, steps);
  const int offset = static_cast<int>(backward.samples.size()) - 1;
  for (int i = offset; i >= 1; --i) branch.samples.push_back(std::move(backward.samples[i]));
  for (auto& s : forward.samples) branch.samples.push_back(std::move(s));
  // Backward events are re-indexed onto the reversed sample list.
  for (auto it = backward.events.rbegin(); it != backward.events.rend(); ++it) {
    Event e = std::move(*it);
    const int before = offset - e.after;
    const int after = offset - e.before;
    e.before = before;
    e.after = after;
    branch.events.push_back(std::move(e));
  }
  for (const EventSpec& spec : specs) {
    if (spec.function(u0) == 0.0) {
      Event e;
      e.kind = spec.kind;
      e.source = static_cast<int>(&spec - specs.data());
      e.location = u0;
      e.before = e.after = offset;
      branch.events.push_back(std::move(e));
    }
  }
  for (auto& e : forward.events) {
    e.before += offset;
    e.after += offset;
    branch.events.push_back(std::move(e));
  }
  std::stable_sort(branch.events.begin(), branch.events.end(),
                   [](const Event& a, const Event& b) { return a.before < b.before; });
  return branch;
}

int winding_number(const Branch& branch) {
  if (!branch.closed) throw InvalidInput("winding number of an open branch");
  return branch.winding;
}

bool branch_contains(const Branch& branch, const Eigen::VectorXd& x, double tol) {
  const ResidualSystem& system = *branch.system;
  if (branch.samples.empty()) return false;
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < branch.samples.size(); ++j) {
    const double d = system.difference(x, branch.samples[j]).norm();
    if (d < best_distance) {
      best_distance = d;
      best = j;
    }
  }
  if (best_distance <= tol) return true;
  if (branch.samples.size() < 2 || best_distance > 0.1) return false;
  const Eigen::VectorXd tau = neighbour_tangent(branch, best);
  const Eigen::VectorXd target = branch.samples[best] + system.difference(x, branch.samples[best]);
  Eigen::VectorXd y = branch.samples[best] + tau * tau.dot(target - branch.samples[best]);
  if (!correct(system, y, target, tau, std::min(tol * 1e-2, 1e-10))) return false;
  return (y - target).norm() <= tol;
}

int isotropy(const Branch& branch, const TraceSettings& settings) {
  if (!branch.closed || branch.gauge_pinned || !branch.system) return 1;
  const int order = branch.system->symmetry_order();
  for (int k = order; k > 1; --k) {
    if (order % k != 0) continue;
    const Eigen::VectorXd image = branch.system->act(branch.samples.front(), order / k);
    if (branch_contains(branch, image, settings.closure_tol)) return k;
  }
  return 1;
}

std::vector<Eigen::VectorXd> star_slice_solutions(const SystemPtr& system, double value, int denominator,
                                                  const SolverSettings& settings) {
  const int n = system->domain_dim();
  const SystemPtr slice = star_slice(system, value);
  std::vector<Eigen::VectorXd> seeds;
  for (auto& gaps : simplex_lattice(n, denominator)) {
    Eigen::VectorXd v(n);
    v[0] = 0.0;
    for (int k = 1; k < n; ++k) v[k] = v[k - 1] + gaps[k - 1];
    v.array() += value - v.mean();
    seeds.push_back(std::move(v));
  }
  const auto results = multistart(*slice, seeds, settings);
  std::vector<Eigen::VectorXd> out;
  for (const auto& r : results) {
    if (!r.ok()) continue;
    bool seen = false;
    for (const auto& s : out) seen = seen || system->difference(r.u, s).norm() < 1e-7;
    if (!seen) out.push_back(r.u);
  }
  return out;
}

std::vector<Branch> trace_components(const SystemPtr& system, const std::vector<Eigen::VectorXd>& starts,
                                     const TraceSettings& settings, const std::vector<EventSpec>& events) {
  std::vector<Branch> out;
  for (const auto& s : starts) {
    bool covered = false;
    for (const auto& b : out) {
      if (branch_contains(b, s, 1e-6)) {
        covered = true;
        break;
      }
    }
    if (!covered) out.push_back(trace_branch(system, s, settings, events));
  }
  return out;
}

int winding_sum(const std::vector<Branch>& branches) {
  int sum = 0;
  for (const auto& b : branches)
    if (b.closed) sum += b.winding;
  return sum;
}

}  // namespace pegfinder
