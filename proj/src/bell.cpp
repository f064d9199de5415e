#include "spinorbit/bell.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <set>

#include <Eigen/Dense>

#include "spinorbit/errors.hpp"

namespace spinorbit {
namespace {

constexpr double kPi = std::numbers::pi;

// Wraps x into (-period/2, period/2].
double wrap_centered(double x, double period) {
  double r = std::remainder(x, period);
  if (r <= -0.5 * period) r += period;
  return r;
}

Complex projection_amplitude(const BiphotonState& joint, const PhotonState& t,
                             const PhotonState& r) {
  Complex sum(0.0);
  for (const auto& [kt, at] : t.amplitudes()) {
    for (const auto& [kr, ar] : r.amplitudes()) {
      sum += std::conj(at) * std::conj(ar) * joint.amplitude(kt, kr);
    }
  }
  return sum;
}

// Minimizes f on [lo, hi] by golden-section search.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double ChshSettings::bar(double beta) const { return beta + kPi / (2.0 * two_q); }

ChshSettings standard_chsh_settings(int two_q, double theta) {
  if (two_q == 0) throw InvalidParameter("q must be nonzero");
  const double unit = kPi / (8.0 * two_q);  // pi / (16 q)
  return ChshSettings{0.0, unit, 2.0 * unit, 3.0 * unit, two_q, theta};
}

double fringe_period(int two_q) {
  if (two_q == 0) throw InvalidParameter("q must be nonzero");
  return kPi / std::abs(two_q);
}

// ---- ConjugateArms ----

ConjugateArms::ConjugateArms(const BiphotonState& joint, ArmConfig cfg, Calibration calibration)
    : joint_(to_circular_basis(joint)), cfg_(cfg) {
  if (cfg.two_q == 0) throw InvalidParameter("q must be nonzero");
  maximum_ = spinorbit::fringe_maximum(joint_, cfg.two_q);
  // Three-point probe of A + B cos(4q Delta + 2 delta0) at 4q Delta = 0, pi/2, pi.
  const double quarter = kPi / (2.0 * cfg.two_q);  // 4q Delta = pi
  const double c0 = raw_probability(0.0, 0.0);
  const double c1 = raw_probability(0.5 * quarter, 0.0);
  const double c2 = raw_probability(quarter, 0.0);
  const double mean = 0.5 * (c0 + c2);
  const double b_cos = 0.5 * (c0 - c2);
  const double b_sin = mean - c1;
  const double scale = std::max(std::abs(b_cos), std::abs(b_sin));
  delta0_ = scale <= 1e-15 * maximum_ ? 0.0 : 0.5 * std::atan2(b_sin, b_cos);
  if (calibration == Calibration::Calibrated) shift_ = delta0_ / cfg.two_q;
}

double ConjugateArms::raw_probability(double beta_t, double beta_r) const {
  const PhotonState t = analyzer_state({cfg_.two_q, cfg_.theta, beta_t}, joint_.m_max());
  const PhotonState r = analyzer_state({-cfg_.two_q, -cfg_.theta, beta_r}, joint_.m_max());
  return std::norm(projection_amplitude(joint_, t, r));
}

double ConjugateArms::probability(double beta_t, double beta_r) const {
  return raw_probability(beta_t - shift_, beta_r);
}

double ConjugateArms::coincidence(double beta_t, double beta_r) const {
  return probability(beta_t, beta_r) / maximum_;
}

std::array<double, 4> ConjugateArms::outcome_weights(double beta_t, double beta_r) const {
  const double bar_shift = kPi / (2.0 * cfg_.two_q);
  const double bt_bar = beta_t + bar_shift;
  const double br_bar = beta_r + bar_shift;
  return {coincidence(beta_t, beta_r), coincidence(bt_bar, br_bar),
          coincidence(beta_t, br_bar), coincidence(bt_bar, beta_r)};
}

double ConjugateArms::correlation(double beta_t, double beta_r) const {
  const auto w = outcome_weights(beta_t, beta_r);
  const double total = w[0] + w[1] + w[2] + w[3];
  if (!(total > 0.0)) throw ZeroDenominator("correlator denominator vanishes");
  return (w[0] + w[1] - w[2] - w[3]) / total;
}

double ConjugateArms::chsh(const ChshSettings& s) const {
  return correlation(s.beta_t, s.beta_r) - correlation(s.beta_t, s.beta_r_prime) +
         correlation(s.beta_t_prime, s.beta_r) + correlation(s.beta_t_prime, s.beta_r_prime);
}

// ---- free functions ----

PhotonState collapse_partner(const BiphotonState& joint, const Analyzer& a_t) {
  const PhotonState raw = partial_inner(analyzer_state(a_t, joint.m_max()), joint);
  if (raw.empty()) throw OrthogonalAnalyzer("analyzer is orthogonal to the joint state");
  return raw.normalized();
}

double coincidence_probability(const BiphotonState& joint, const Analyzer& a_t,
                               const Analyzer& a_r) {
  const BiphotonState ket = to_circular_basis(joint);
  return std::norm(projection_amplitude(ket, analyzer_state(a_t, ket.m_max()),
                                        analyzer_state(a_r, ket.m_max())));
}

double fringe_maximum(const BiphotonState& joint, int two_q) {
  if (std::abs(two_q) > joint.m_max()) {
    throw TruncationOverflow("2q=" + std::to_string(two_q) + " exceeds m_max=" +
                             std::to_string(joint.m_max()));
  }
  const BiphotonState ket = to_circular_basis(joint);
  const double xi = std::abs(ket.amplitude({Spin::R, two_q}, {Spin::R, -two_q}));
  const double eta = std::abs(ket.amplitude({Spin::L, -two_q}, {Spin::L, two_q}));
  const double maximum = 0.25 * (xi + eta) * (xi + eta);
  if (!(maximum > 0.0)) {
    throw DegenerateNormalization("no amplitude on the pairs selected by 2q=" +
                                  std::to_string(two_q));
  }
  return maximum;
}

double coincidence(const BiphotonState& joint, const Analyzer& a_t, const Analyzer& a_r) {
  return coincidence_probability(joint, a_t, a_r) / fringe_maximum(joint, a_t.two_q);
}

BiphotonState postselect_bell(const BiphotonState& joint, int two_q) {
  if (two_q == 0) throw InvalidParameter("q must be nonzero");
  const BiphotonState ket = to_circular_basis(joint);
  const std::set<SpinOrbitMode> t_modes{{Spin::R, two_q}, {Spin::L, -two_q}};
  const std::set<SpinOrbitMode> r_modes{{Spin::R, -two_q}, {Spin::L, two_q}};
  BiphotonState::Map kept;
  for (const auto& [pair, amp] : ket.amplitudes()) {
    if (t_modes.contains(pair.t) && r_modes.contains(pair.r)) kept.emplace(pair, amp);
  }
  BiphotonState projected(std::move(kept), ket.m_max());
  if (projected.empty()) throw EmptyProjection("joint state has no weight in the 2x2 subspace");
  return projected.normalized();
}

std::array<double, 2> schmidt_coefficients(const BiphotonState& b) {
  const BiphotonState ket = to_circular_basis(b);
  if (ket.empty()) throw EmptyProjection("Schmidt decomposition of the zero state");
  std::vector<SpinOrbitMode> rows;
  std::vector<SpinOrbitMode> cols;
  auto index_of = [](std::vector<SpinOrbitMode>& modes, const SpinOrbitMode& mode) {
    const auto it = std::find(modes.begin(), modes.end(), mode);
    if (it != modes.end()) return static_cast<Eigen::Index>(it - modes.begin());
    modes.push_back(mode);
    return static_cast<Eigen::Index>(modes.size() - 1);
  };
  Eigen::Matrix2cd amplitudes = Eigen::Matrix2cd::Zero();
  for (const auto& [pair, amp] : ket.amplitudes()) {
    const Eigen::Index i = index_of(rows, pair.t);
    const Eigen::Index j = index_of(cols, pair.r);
    if (rows.size() > 2 || cols.size() > 2) {
      throw UnsupportedShape("biphoton support exceeds a 2x2 product of modes");
    }
    amplitudes(i, j) = amp;
  }
  amplitudes /= amplitudes.norm();
  const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(amplitudes);
  const Eigen::Vector2d sv = svd.singularValues();
  return {sv(0), sv(1)};
}

double fringe_offset(const BiphotonState& joint, ArmConfig cfg) {
  return ConjugateArms(joint, cfg, Calibration::Raw).offset_delta0();
}

double correlation_E(const BiphotonState& joint, ArmConfig cfg, double beta_t, double beta_r,
                     Calibration calibration) {
  return ConjugateArms(joint, cfg, calibration).correlation(beta_t, beta_r);
}

double chsh_S(const BiphotonState& joint, const ChshSettings& s, Calibration calibration) {
  return ConjugateArms(joint, {s.two_q, s.theta}, calibration).chsh(s);
}

ChshOptimum optimize_chsh(const BiphotonState& joint, int two_q, double resolution) {
  if (!(resolution > 0.0)) throw InvalidParameter("resolution must be positive");
  const ConjugateArms arms(joint, {two_q, 0.0});
  const double period = fringe_period(two_q);
  const auto n = static_cast<std::ptrdiff_t>(std::max(8.0, std::ceil(period / resolution)));
  const double step = period / static_cast<double>(n);

  // E depends on beta_t - beta_r only; tabulate it over one period.
  std::vector<double> e(static_cast<std::size_t>(n));
  for (std::ptrdiff_t k = 0; k < n; ++k) e[k] = arms.correlation(step * k, 0.0);
  auto at = [&](std::ptrdiff_t k) { return e[static_cast<std::size_t>(((k % n) + n) % n)]; };

  // With beta_t = 0, x = -beta_r, y = -beta_r', z = beta_t' - beta_r:
  // S = E(x) - E(y) + E(z) + E(z - x + y). Maximize z for each d = y - x first.
  std::vector<double> best_pair(static_cast<std::size_t>(n));
  std::vector<std::ptrdiff_t> best_z(static_cast<std::size_t>(n));
  for (std::ptrdiff_t d = 0; d < n; ++d) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::ptrdiff_t z = 0; z < n; ++z) {
      const double v = e[z] + at(z + d);
      if (v > best) {
        best = v;
        best_z[d] = z;
      }
    }
    best_pair[d] = best;
  }
  double best_s = -std::numeric_limits<double>::infinity();
  std::ptrdiff_t bx = 0, by = 0;
  for (std::ptrdiff_t x = 0; x < n; ++x) {
    for (std::ptrdiff_t y = 0; y < n; ++y) {
      const double v = e[x] - e[y] + best_pair[((y - x) % n + n) % n];
      if (v > best_s) {
        best_s = v;
        bx = x;
        by = y;
      }
    }
  }
  const std::ptrdiff_t bz = best_z[((by - bx) % n + n) % n];

  ChshSettings s{0.0, -step * bx, step * (bz - bx), -step * by, two_q, 0.0};
  double value = arms.chsh(s);

  // Coordinate-wise golden-section refinement around the grid optimum.
  double* coords[3] = {&s.beta_r, &s.beta_t_prime, &s.beta_r_prime};
  double width = step;
  for (int sweep = 0; sweep < 60; ++sweep) {
    const double before = value;
    for (double* c : coords) {
      const double centre = *c;
      const double saved = *c;
      const double arg = golden_section_min(
          [&](double v) {
            *c = v;
            return -arms.chsh(s);
          },
          centre - width, centre + width, 1e-12);
      *c = arg;
      const double trial = arms.chsh(s);
      if (trial >= value) {
        value = trial;
      } else {
        *c = saved;
      }
    }
    width = std::max(0.5 * width, 1e-7);
    if (sweep > 4 && value - before < 1e-16) break;
  }

  // Orient the settings so consecutive spacings share the sign of q, and
  // wrap every angle into (-period/2, period/2].
  if (std::signbit(wrap_centered(s.beta_r - s.beta_t, period)) != std::signbit(double(two_q))) {
    ChshSettings mirrored{-s.beta_t, -s.beta_r, -s.beta_t_prime, -s.beta_r_prime, two_q, 0.0};
    const double mv = arms.chsh(mirrored);
    if (mv >= value - 1e-12) {
      s = mirrored;
      value = mv;
    }
  }
  for (double* c : {&s.beta_t, &s.beta_r, &s.beta_t_prime, &s.beta_r_prime}) {
    *c = wrap_centered(*c, period);
  }
  value = arms.chsh(s);

  const ChshSettings standard = standard_chsh_settings(two_q);
  const double standard_value = arms.chsh(standard);
  if (standard_value > value) return {standard, standard_value};
  return {s, value};
}

FringeFit fringe_fit(std::span<const FringeSample> samples) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  if (n < 8) throw InvalidParameter("fringe fit needs at least 8 samples");

  Eigen::VectorXd delta(n), value(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    delta(i) = samples[static_cast<std::size_t>(i)].delta;
    value(i) = samples[static_cast<std::size_t>(i)].value;
  }
  FringeFit fit;
  fit.mean = value.mean();
  const double spread = value.maxCoeff() - value.minCoeff();
  if (spread <= 1e-12 * std::max(1.0, std::abs(fit.mean))) {
    fit.degenerate = true;
    fit.visibility = 0.0;
    fit.offset_delta0 = std::numeric_limits<double>::quiet_NaN();
    fit.period = std::numeric_limits<double>::quiet_NaN();
    fit.rms_residual = (value.array() - fit.mean).matrix().norm() / std::sqrt(double(n));
    return fit;
  }

  std::vector<double> sorted(delta.data(), delta.data() + n);
  std::sort(sorted.begin(), sorted.end());
  const double span = sorted.back() - sorted.front();
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double gap = sorted[i] - sorted[i - 1];
    if (gap > 0.0) min_gap = std::min(min_gap, gap);
  }
  if (!(span > 0.0)) throw InvalidParameter("fringe samples must span a nonzero range");

  // Linear least squares for fixed omega; returns coefficients and residual.
  auto linear_fit = [&](double omega, Eigen::Vector3d& coef) {
    Eigen::MatrixXd design(n, 3);
    design.col(0).setOnes();
    design.col(1) = (omega * delta.array()).cos().matrix();
    design.col(2) = (omega * delta.array()).sin().matrix();
    coef = design.colPivHouseholderQr().solve(value);
    return (design * coef - value).squaredNorm();
  };

  // Frequency scan between half a cycle over the span and the Nyquist limit.
  const double omega_lo = kPi / span;
  const double omega_hi = kPi / min_gap;
  const double omega_step = kPi / (8.0 * span);
  double omega = omega_lo;
  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector3d coef;
  for (double w = omega_lo; w <= omega_hi; w += omega_step) {
    const double r = linear_fit(w, coef);
    if (r < best) {
      best = r;
      omega = w;
    }
  }
  linear_fit(omega, coef);

  // Gauss-Newton on (a, b, c, omega) for a + b cos(omega D) + c sin(omega D).
  Eigen::Vector4d p(coef(0), coef(1), coef(2), omega);
  for (int iter = 0; iter < 100; ++iter) {
    const Eigen::ArrayXd phase = p(3) * delta.array();
    const Eigen::ArrayXd cs = phase.cos();
    const Eigen::ArrayXd sn = phase.sin();
    const Eigen::VectorXd residual =
        (p(0) + p(1) * cs + p(2) * sn - value.array()).matrix();
    Eigen::MatrixXd jac(n, 4);
    jac.col(0).setOnes();
    jac.col(1) = cs.matrix();
    jac.col(2) = sn.matrix();
    jac.col(3) = (delta.array() * (p(2) * cs - p(1) * sn)).matrix();
    const Eigen::Vector4d dp = jac.colPivHouseholderQr().solve(-residual);
    p += dp;
    if (dp.norm() <= 1e-15 * (1.0 + p.norm())) break;
  }

  const double amplitude = std::hypot(p(1), p(2));
  const Eigen::ArrayXd phase = p(3) * delta.array();
  const Eigen::ArrayXd model = p(0) + p(1) * phase.cos() + p(2) * phase.sin();
  fit.mean = p(0);
  fit.visibility = amplitude / p(0);
  fit.period = 2.0 * kPi / std::abs(p(3));
  // b cos + c sin = B cos(omega D - atan2(c, b)); cos^2(u + d0) carries 2 d0.
  const double two_delta0 = -std::atan2(p(2), p(1)) * (p(3) < 0.0 ? -1.0 : 1.0);
  fit.offset_delta0 = wrap_centered(0.5 * two_delta0, kPi);
  fit.rms_residual = std::sqrt((model - value.array()).square().mean());
  return fit;
}

std::vector<FringeSample> fringe_scan(const BiphotonState& joint, ArmConfig cfg, int steps,
                                      double span) {
  if (steps < 1) throw InvalidParameter("fringe scan needs at least one step");
  if (!(span > 0.0)) throw InvalidParameter("fringe span must be positive");
  const ConjugateArms arms(joint, cfg, Calibration::Raw);
  std::vector<FringeSample> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double delta = span * k / steps;
    out.push_back({delta, arms.coincidence(delta, 0.0)});
  }
  return out;
}

}  // namespace spinorbit
