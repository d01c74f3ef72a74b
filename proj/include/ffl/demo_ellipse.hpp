#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include "ffl/errors.hpp"

namespace ffl {

// Continuous-plane demo: the norm ||x+iy|| = sqrt(x^2/9 + 4y^2) and the
// piecewise self-map
//   g(z) = z                                     if xy >= 0
//        = 36 z / (-35(z^2 + conj(z)^2) + 74 z conj(z))   otherwise,
// whose fixed-point set contains the unit circle of that norm (the
// ellipse x^2/9 + 4y^2 = 1). On the figure the denominator equals
// 4x^2 + 144y^2 = 36, so g is the identity there up to binary64 roundoff.
// This is the only floating-point computation in the library.
struct EllipseDemoConfig {
  long samples = 10000;
  double eps = 1e-9;
  enum class QuadrantPolicy {
    AsDefined,       // identity branch where xy >= 0, inversion elsewhere
    ForceInversion,  // evaluate the inversion formula at every sample
  };
  QuadrantPolicy policy = QuadrantPolicy::AsDefined;
};

struct EllipseDemoReport {
  long samples = 0;
  double eps = 0;
  std::string policy;
  double max_deviation = 0;
  double max_denominator_rel_error = 0;
  bool pass = false;
  std::string probe_z, probe_gz;
  double probe_deviation = 0;
  bool probe_differs = false;
};

namespace detail {

inline double ellipse_norm(const std::complex<double>& z) {
  return std::sqrt(z.real() * z.real() / 9.0 + 4.0 * z.imag() * z.imag());
}

inline std::complex<double> demo_denominator(const std::complex<double>& z) {
  std::complex<double> zc = std::conj(z);
  return -35.0 * (z * z + zc * zc) + 74.0 * z * zc;
}

inline std::complex<double> demo_map(const std::complex<double>& z, bool force_inversion) {
  bool identity_branch = z.real() * z.imag() >= 0.0;
  if (identity_branch && !force_inversion) return z;
  return 36.0 * z / demo_denominator(z);
}

inline std::string format_complex(const std::complex<double>& z) {
  std::ostringstream out;
  out << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return out.str();
}

}  // namespace detail

inline EllipseDemoReport run_ellipse_demo(const EllipseDemoConfig& cfg) {
  if (cfg.samples < 1) throw ParameterError("demo requires at least one sample");
  if (!(cfg.eps > 0)) throw ParameterError("demo tolerance must be positive");

  const bool force = cfg.policy == EllipseDemoConfig::QuadrantPolicy::ForceInversion;
  EllipseDemoReport rep;
  rep.samples = cfg.samples;
  rep.eps = cfg.eps;
  rep.policy = force ? "force-inversion" : "as-defined";

  for (long k = 0; k < cfg.samples; ++k) {
    double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                   static_cast<double>(cfg.samples);
    std::complex<double> z(3.0 * std::cos(theta), 0.5 * std::sin(theta));
    std::complex<double> gz = detail::demo_map(z, force);
    rep.max_deviation = std::max(rep.max_deviation, detail::ellipse_norm(gz - z));
    std::complex<double> denom = detail::demo_denominator(z);
    double err = std::max(std::abs(denom.real() - 36.0), std::abs(denom.imag())) / 36.0;
    rep.max_denominator_rel_error = std::max(rep.max_denominator_rel_error, err);
  }

  // Off the figure g is not the identity: z = -1 + i/2 lands in the
  // inversion branch with denominator 40, so g(z) = 0.9 z.
  std::complex<double> probe(-1.0, 0.5);
  std::complex<double> gprobe = detail::demo_map(probe, false);
  rep.probe_z = detail::format_complex(probe);
  rep.probe_gz = detail::format_complex(gprobe);
  rep.probe_deviation = detail::ellipse_norm(gprobe - probe);
  rep.probe_differs = rep.probe_deviation > cfg.eps;

  rep.pass = rep.max_deviation < cfg.eps && rep.max_denominator_rel_error < cfg.eps &&
             rep.probe_differs;
  return rep;
}

}  // namespace ffl
