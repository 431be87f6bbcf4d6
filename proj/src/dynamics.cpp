#include "hhg/dynamics.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "hhg/errors.hpp"

namespace hhg {

namespace {
using cplx = std::complex<double>;
constexpr double kTraceDriftLimit = 1e-6;
}  // namespace

void RelaxationRates::validate() const {
  if (!(gamma_d >= 0) || !std::isfinite(gamma_d)) throw ConfigError("dynamics.gamma_d must be >= 0");
  if (!(gamma_od >= 0) || !std::isfinite(gamma_od)) throw ConfigError("dynamics.gamma_od must be >= 0");
}

void PropagationDiagnostics::merge(const PropagationDiagnostics& o) {
  max_trace_dev = std::max(max_trace_dev, o.max_trace_dev);
  max_herm_ratio = std::max(max_herm_ratio, o.max_herm_ratio);
  max_imag_current = std::max(max_imag_current, o.max_imag_current);
  max_abs_current = std::max(max_abs_current, o.max_abs_current);
}

Eigen::MatrixXcd dynamics_rhs(const Eigen::MatrixXcd& rho, const Eigen::VectorXd& e,
                              const Eigen::MatrixXcd& p, double a_t, const RelaxationRates& rates) {
  const int n = static_cast<int>(rho.rows());
  Eigen::MatrixXcd h = (-a_t) * p;
  for (int i = 0; i < n; ++i) h(i, i) += e(i);
  Eigen::MatrixXcd out = cplx(0.0, -1.0) * (h * rho - rho * h) - rates.gamma_od * rho;
  // The diagonal pull is applied as one difference against its target so the
  // equilibrium state is an exact fixed point, not one rounding away from it.
  for (int i = 0; i < n; ++i) {
    const cplx target = i == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    out(i, i) += rates.gamma_od * rho(i, i) - rates.gamma_d * (rho(i, i) - target);
  }
  return out;
}

namespace {

template <class Mat>
class KPropagator {
 public:
  KPropagator(const Eigen::VectorXd& e, const Eigen::MatrixXcd& p, const RelaxationRates& rates)
      : e_(e), p_(p), gd_(rates.gamma_d), god_(rates.gamma_od), n_(static_cast<int>(e.size())) {
    auto init = [this](Mat& m) { m.resize(n_, n_); };
    init(h_);
    init(hr_);
    init(rh_);
    init(y_);
    init(tmp_);
    init(k1_);
    init(k2_);
    init(k3_);
    init(k4_);
  }

  std::vector<double> run(const FieldFn& a_of_t, double dt, int nsteps,
                          PropagationDiagnostics* diag, const SnapshotFn* snapshot) {
    y_.setZero();
    y_(0, 0) = 1.0;
    std::vector<double> j(static_cast<std::size_t>(nsteps) + 1);
    record(0, 0.0, a_of_t(0.0), j, diag, snapshot);
    for (int i = 0; i < nsteps; ++i) {
      const double t = i * dt;
      const double a1 = a_of_t(t);
      const double a2 = a_of_t(t + 0.5 * dt);
      const double a4 = a_of_t(t + dt);
      rhs(y_, a1, k1_);
      tmp_ = y_ + (0.5 * dt) * k1_;
      rhs(tmp_, a2, k2_);
      tmp_ = y_ + (0.5 * dt) * k2_;
      rhs(tmp_, a2, k3_);
      tmp_ = y_ + dt * k3_;
      rhs(tmp_, a4, k4_);
      y_ += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
      record(i + 1, t + dt, a4, j, diag, snapshot);
    }
    return j;
  }

 private:
  void rhs(const Mat& rho, double a_t, Mat& out) {
    h_ = (-a_t) * p_;
    for (int i = 0; i < n_; ++i) h_(i, i) += e_(i);
    hr_.noalias() = h_ * rho;
    rh_.noalias() = rho * h_;
    out = cplx(0.0, -1.0) * (hr_ - rh_) - god_ * rho;
    for (int i = 0; i < n_; ++i) {
      const cplx target = i == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      out(i, i) += god_ * rho(i, i) - gd_ * (rho(i, i) - target);
    }
  }

  void record(int step, double t, double a_t, std::vector<double>& j,
              PropagationDiagnostics* diag, const SnapshotFn* snapshot) {
    cplx tr = 0.0, trp = 0.0;
    for (int r = 0; r < n_; ++r) {
      tr += y_(r, r);
      for (int c = 0; c < n_; ++c) trp += y_(r, c) * p_(c, r);
    }
    const double trace_dev = std::abs(tr - 1.0);
    if (trace_dev > kTraceDriftLimit) {
      throw NumericalError("trace drift " + std::to_string(trace_dev) + " at step " +
                           std::to_string(step) +
                           "; the time step is too large, raise dynamics.steps_per_cycle or "
                           "lower dynamics.dt");
    }
    const double jv = trp.real() - a_t * tr.real();
    j[static_cast<std::size_t>(step)] = jv;
    if (diag) {
      const double maxabs = y_.cwiseAbs().maxCoeff();
      const double herm = (y_ - y_.adjoint()).cwiseAbs().maxCoeff();
      diag->max_trace_dev = std::max(diag->max_trace_dev, trace_dev);
      if (maxabs > 0) diag->max_herm_ratio = std::max(diag->max_herm_ratio, herm / maxabs);
      diag->max_imag_current = std::max(diag->max_imag_current, std::abs(trp.imag()));
      diag->max_abs_current = std::max(diag->max_abs_current, std::abs(jv));
    }
    if (snapshot) {
      const Eigen::MatrixXcd rho = y_;
      (*snapshot)(step, t, rho);
    }
  }

  Eigen::VectorXd e_;
  Mat p_;
  double gd_, god_;
  int n_;
  Mat h_, hr_, rh_, y_, tmp_, k1_, k2_, k3_, k4_;
};

}  // namespace

std::vector<double> propagate_current_k(const Eigen::VectorXd& e, const Eigen::MatrixXcd& p,
                                        const RelaxationRates& rates, const FieldFn& a_of_t,
                                        double dt, int nsteps, PropagationDiagnostics* diag,
                                        const SnapshotFn* snapshot) {
  if (e.size() != p.rows() || p.rows() != p.cols()) {
    throw ConfigError("dynamics: energy vector and momentum block sizes disagree");
  }
  if (!(dt > 0) || nsteps < 1) throw ConfigError("dynamics: dt must be positive and nsteps >= 1");
  switch (e.size()) {
    case 2: {
      KPropagator<Eigen::Matrix2cd> prop(e, p, rates);
      return prop.run(a_of_t, dt, nsteps, diag, snapshot);
    }
    case 4: {
      KPropagator<Eigen::Matrix4cd> prop(e, p, rates);
      return prop.run(a_of_t, dt, nsteps, diag, snapshot);
    }
    default: {
      KPropagator<Eigen::MatrixXcd> prop(e, p, rates);
      return prop.run(a_of_t, dt, nsteps, diag, snapshot);
    }
  }
}

std::vector<double> propagate_current_k(const Eigen::VectorXd& e, const Eigen::MatrixXcd& p,
                                        const RelaxationRates& rates, const PulseParams& pulse,
                                        double dt, int nsteps, PropagationDiagnostics* diag,
                                        const SnapshotFn* snapshot) {
  const FieldFn fn = [&pulse](double t) { return vector_potential(pulse, t); };
  return propagate_current_k(e, p, rates, fn, dt, nsteps, diag, snapshot);
}

}  // namespace hhg
