#include "hhg/potential.hpp"

#include <cmath>
#include <numbers>

#include "hhg/errors.hpp"
#include "hhg/units.hpp"

namespace hhg {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
}  // namespace

PotentialSpec PotentialSpec::cosine_defaults() {
  PotentialSpec s;
  s.kind = PotentialKind::CosineWells;
  s.a = units::angstrom_to_bohr(5.2);
  s.u0 = units::ev_to_ha(25.0);
  s.width_ratio = 0.15;
  s.u_shift = 0.0;
  s.centers = {0.3, 0.607};
  return s;
}

PotentialSpec PotentialSpec::sinh_defaults() {
  PotentialSpec s;
  s.kind = PotentialKind::SinhWells;
  s.a = units::angstrom_to_bohr(5.2);
  s.u0 = units::ev_to_ha(4080.925);
  s.width_ratio = 0.0;
  s.u_shift = units::ev_to_ha(187.722);
  s.centers = {0.18, 0.7};
  return s;
}

PotentialSpec PotentialSpec::defaults(PotentialKind kind) {
  return kind == PotentialKind::CosineWells ? cosine_defaults() : sinh_defaults();
}

void PotentialSpec::validate() const {
  auto bad = [](double v) { return !std::isfinite(v); };
  if (bad(a) || a <= 0) throw ConfigError("potential.a must be finite and positive");
  if (bad(u0) || u0 <= 0) throw ConfigError("potential.U0 must be finite and positive");
  for (double c : centers) {
    if (bad(c) || c < 0 || c >= 1) throw ConfigError("potential.centers must lie in [0, 1)");
  }
  if (centers[0] >= centers[1]) throw ConfigError("potential.centers must be strictly ascending");
  if (kind == PotentialKind::CosineWells) {
    if (bad(width_ratio) || width_ratio <= 0 || width_ratio > 0.5) {
      throw ConfigError("potential.width_ratio must lie in (0, 0.5]");
    }
  } else {
    if (bad(u_shift) || u_shift <= 0) throw ConfigError("potential.U_shift must be finite and positive");
  }
}

namespace {

double min_image(double d, double a) { return d - a * std::round(d / a); }

double eval_cosine(const PotentialSpec& s, double x) {
  const double delta = s.width_ratio * s.a;
  double u = 0.0;
  for (double cf : s.centers) {
    const double d = min_image(x - cf * s.a, s.a);
    if (std::abs(d) <= 0.5 * delta) {
      const double cs = std::cos(kPi * d / delta);
      u -= s.u0 * cs * cs;
    }
  }
  return u;
}

double eval_sinh(const PotentialSpec& s, double x) {
  double dmin = s.a;
  for (double cf : s.centers) {
    const double d = std::abs(min_image(x - cf * s.a, s.a));
    dmin = std::min(dmin, d);
  }
  const double sh = std::sinh(dmin / s.a);
  return -s.u_shift + s.u0 * sh * sh;
}

// Transform of the cos^2 lobe: integral over [-delta/2, delta/2] of
// cos^2(pi d / delta) e^{-iGd} dd.
double lobe_integral(double g, double delta) {
  const double w = 2.0 * kPi / delta;
  if (g == 0.0) return 0.5 * delta;
  if (std::abs(std::abs(g) - w) < 1e-12 * w) return 0.25 * delta;
  return std::sin(0.5 * g * delta) * w * w / (g * (w * w - g * g));
}

cplx coeff_cosine(const PotentialSpec& s, int m) {
  const double g = 2.0 * kPi * m / s.a;
  const double delta = s.width_ratio * s.a;
  cplx phase_sum = 0.0;
  for (double cf : s.centers) {
    phase_sum += std::exp(cplx(0.0, -g * cf * s.a));
  }
  return -(s.u0 / s.a) * lobe_integral(g, delta) * phase_sum;
}

// sinh^2(d/a) = (cosh(2d/a) - 1)/2 integrates in closed form on each segment
// of the nearest-center partition of the cell.
cplx coeff_sinh(const PotentialSpec& s, int m) {
  const double a = s.a;
  const double g = 2.0 * kPi * m / a;
  const double f1 = s.centers[0];
  const double f2 = s.centers[1];
  const double m12 = 0.5 * (f1 + f2) * a;        // boundary between well 1 and well 2
  const double m21 = 0.5 * (f1 + f2 + 1.0) * a;  // boundary through the cell edge
  struct Seg {
    double lo, hi, c;
  };
  const Seg segs[2] = {{m21 - a, m12, f1 * a}, {m12, m21, f2 * a}};
  cplx acc = 0.0;
  for (const Seg& sg : segs) {
    for (double sgn : {2.0 / a, -2.0 / a}) {
      const cplx alpha(sgn, -g);
      acc += 0.25 * std::exp(-sgn * sg.c) * (std::exp(alpha * sg.hi) - std::exp(alpha * sg.lo)) / alpha;
    }
    if (m == 0) {
      acc += -0.5 * (sg.hi - sg.lo);
    } else {
      const cplx ig(0.0, -g);
      acc += -0.5 * (std::exp(ig * sg.hi) - std::exp(ig * sg.lo)) / ig;
    }
  }
  cplx res = s.u0 * acc / a;
  if (m == 0) res += -s.u_shift;
  return res;
}

}  // namespace

double evaluate_potential(const PotentialSpec& spec, double x) {
  return spec.kind == PotentialKind::CosineWells ? eval_cosine(spec, x) : eval_sinh(spec, x);
}

FourierPotential fourier_coefficients(const PotentialSpec& spec, int m_max) {
  spec.validate();
  FourierPotential fp;
  fp.m_max = m_max;
  fp.c.resize(static_cast<std::size_t>(2 * m_max + 1));
  for (int m = -m_max; m <= m_max; ++m) {
    const cplx v = spec.kind == PotentialKind::CosineWells ? coeff_cosine(spec, m) : coeff_sinh(spec, m);
    fp.c[static_cast<std::size_t>(m + m_max)] = v;
  }
  return fp;
}

}  // namespace hhg
