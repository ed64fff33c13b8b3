#pragma once

#include <string>
#include <vector>

#include "ncfeyn/errors.hpp"
#include "ncfeyn/exact/gaussian_rational.hpp"

namespace ncfeyn {

enum class Model { GW, LSZ };

inline std::string to_string(Model m) { return m == Model::GW ? "GW" : "LSZ"; }

/// Model and Moyal-space parameters, all exact.
///
/// The propagators use the frequency Omega~ = 2 Omega / theta. The kernels
/// are assembled in units of kappa = Omega~ / 2 = Omega / theta, in which the
/// vertex oscillation strength becomes 2 s with s = 1 / Omega.
struct ModelParams {
  Model model = Model::GW;
  Rational omega{1, 2};
  Rational theta{1};
  Rational D_default{4};

  Rational omega_tilde() const { return 2 * omega / theta; }
  Rational s() const { return 1 / omega; }
  Rational kappa() const { return omega / theta; }

  void validate() const {
    if (sgn(omega) <= 0) throw ConfigurationError("omega must be positive");
    if (sgn(theta) <= 0) throw ConfigurationError("theta must be positive");
  }

  /// Soft warnings (parameters accepted but outside the usual range).
  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (omega > 1) w.push_back("omega > 1 lies outside the usual range 0 < omega <= 1");
    return w;
  }
};

}  // namespace ncfeyn
