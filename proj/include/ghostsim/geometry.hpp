#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

#include <ghostsim/errors.hpp>

namespace ghostsim {

/// @brief Geometry shared by every propagation formula.
///
/// Distances are measured from the source plane along each arm: s_object to
/// the object (test arm), s_reference to the camera plane (reference arm).
struct OpticalLayout {
  double wavelength;    ///< Wavelength (m)
  double s_object;      ///< Source to object distance (m)
  double s_reference;   ///< Source to reference plane distance (m)
  double source_radius; ///< Source half-aperture R (m)

  /// Wavenumber k = 2 pi / wavelength.
  double wavenumber() const { return 2.0 * M_PI / wavelength; }
  /// Arm mismatch s_reference - s_object; zero for the focused setup.
  double delta_s() const { return s_reference - s_object; }
  bool focused() const { return delta_s() == 0.0; }
};

/// Throws config_error unless every layout field is strictly positive.
void validate(const OpticalLayout &layout);

/// @brief Uniform 1-D axis: position(i) = start + i*step.
struct Grid {
  double start = 0.0;   ///< First sample position (m)
  double step = 0.0;    ///< Sample spacing (m), strictly positive
  std::size_t count = 0; ///< Number of samples, at least 1

  double position(std::size_t i) const { return start + static_cast<double>(i) * step; }
  double last() const { return position(count - 1); }

  /// Endpoint-inclusive grid symmetric about zero, spanning [-half_span, half_span].
  static Grid centered(double half_span, std::size_t n) {
    if (n < 2) throw numeric_error("centered grid needs at least 2 samples");
    if (!(half_span > 0.0)) throw numeric_error("centered grid needs positive half span");
    return Grid{-half_span, 2.0 * half_span / static_cast<double>(n - 1), n};
  }

  /// Midpoint grid over [lo, hi]: n cells, samples at cell centers.
  static Grid midpoint(double lo, double hi, std::size_t n) {
    if (n < 1) throw numeric_error("midpoint grid needs at least 1 cell");
    if (!(hi > lo)) throw numeric_error("midpoint grid needs hi > lo");
    const double h = (hi - lo) / static_cast<double>(n);
    return Grid{lo + 0.5 * h, h, n};
  }

  std::vector<double> positions() const {
    std::vector<double> p(count);
    for (std::size_t i = 0; i < count; ++i) p[i] = position(i);
    return p;
  }

  /// Index of the sample nearest to x.
  std::size_t nearest(double x) const {
    if (count == 1) return 0;
    double t = (x - start) / step;
    if (t <= 0.0) return 0;
    const auto hi = static_cast<double>(count - 1);
    if (t >= hi) return count - 1;
    return static_cast<std::size_t>(std::llround(t));
  }

  bool same_axis(const Grid &o) const {
    return count == o.count && start == o.start && step == o.step;
  }
};

} // namespace ghostsim
