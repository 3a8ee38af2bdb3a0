#pragma once
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <ghostsim/geometry.hpp>

namespace ghostsim {

/// @brief Sampled complex field on a grid. 1-D convention: |amplitude|^2 is W/m.
struct ComplexField {
  Grid grid;                                   ///< Sample axis
  std::vector<std::complex<double>> amplitude; ///< One value per grid sample

  static ComplexField zeros(const Grid &g) {
    return ComplexField{g, std::vector<std::complex<double>>(g.count)};
  }
};

/// @brief Real transmission object T(alpha) with values in [0, 1].
///
/// Point variants (pinhole, double_pinhole) are idealized apertures much
/// narrower than a grid cell: apply_mask keeps only the sample nearest each
/// center, and the closed-form image treats each center as a unit point mass.
struct TransmissionMask {
  enum class Kind { pinhole, double_pinhole, double_slit, uniform, sampled };

  Kind kind = Kind::uniform;
  std::vector<double> centers; ///< Point centers (m), point variants only
  double slit_width = 0.0;     ///< Slit width a1 (m), double_slit only
  double slit_distance = 0.0;  ///< Slit center distance b1 (m), double_slit only
  double value = 1.0;          ///< Transmission level, uniform variant
  Grid sample_grid;            ///< Axis of sampled values, sampled variant
  std::vector<double> samples; ///< Sampled T(alpha), sampled variant

  /// @brief Pinhole at alpha = center.
  static TransmissionMask pinhole(double center);
  /// @brief Two pinholes at center1 and center2.
  static TransmissionMask double_pinhole(double center1, double center2);
  /// @brief Two slits of width a1 centered at -b1/2 and +b1/2; requires a1 < b1.
  static TransmissionMask double_slit(double width_a1, double center_distance_b1);
  /// @brief Constant transmission value in [0, 1].
  static TransmissionMask uniform(double value);
  /// @brief Arbitrary sampled transmission profile, each sample in [0, 1].
  static TransmissionMask sampled(const Grid &grid, std::vector<double> values);

  /// Transmission at a position. Point variants return 1 only at an exact center.
  double evaluate(double alpha) const;
  bool is_point_mask() const {
    return kind == Kind::pinhole || kind == Kind::double_pinhole;
  }
  /// Same object displaced by delta along the axis.
  TransmissionMask shifted(double delta) const;
};

/// @brief One speckle realization as seen by the detectors.
struct FrameRecord {
  std::vector<double> pixel_intensity; ///< |E(beta)|^2 on the camera grid (W/m)
  double bucket = 0.0;                 ///< Integrated power behind the object (W)
  std::optional<double> source_power;  ///< Ground-truth source power, diagnostics only
};

/// @brief Free-space paraxial point response between planes a distance z apart.
/// @return exp(-i k z) / (i lambda z) * exp(-i pi (x - target)^2 / (lambda z)).
///
/// The modulus is exactly 1/(lambda z) for every argument pair.
std::complex<double> fresnel_kernel(double x, double target, double z, double wavelength);

/// @brief Riemann-sum propagation of a sampled field to a target grid.
/// output[j] = sum_i input[i] * fresnel_kernel(x_i, t_j, z, lambda) * step.
ComplexField propagate(const ComplexField &input, const Grid &target_grid, double z,
                       double wavelength);

/// @brief Multiply a field by the object transmission, sample by sample.
///
/// Point variants zero everything except the sample nearest each center.
ComplexField apply_mask(const ComplexField &field, const TransmissionMask &mask);

/// @brief Bucket detector: total power sum_i |amplitude_i|^2 * step.
double bucket_detect(const ComplexField &field);

/// @brief Camera: per-sample intensity |amplitude|^2 on the field's own grid.
std::vector<double> pixel_detect(const ComplexField &field);

/// @brief Quadratic-phase sampling heuristic for the propagation quadrature.
///
/// The source step should satisfy step <= lambda z / (2 max|x - t|); returns a
/// warning message when it does not, std::nullopt when sampling is adequate.
std::optional<std::string> sampling_warning(const Grid &source, const Grid &target, double z,
                                            double wavelength);

/// @brief Precomputed propagation matrix with the quadrature step folded in.
///
/// Row j holds fresnel_kernel(x_i, t_j, z, lambda) * step, split into real and
/// imaginary planes so the per-frame intensity reduction stays cache friendly.
/// The accumulation order inside intensities() is fixed, so results are
/// reproducible bit for bit.
struct KernelMatrix {
  std::size_t rows = 0; ///< Target sample count
  std::size_t cols = 0; ///< Source sample count
  std::vector<double> re; ///< Row-major real parts, rows*cols
  std::vector<double> im; ///< Row-major imaginary parts, rows*cols

  static KernelMatrix build(const Grid &target, const Grid &source, double z,
                            double wavelength);

  /// @brief out[j] = |sum_i H[j,i] * (src_re[i] + i src_im[i])|^2.
  void intensities(const std::vector<double> &src_re, const std::vector<double> &src_im,
                   std::vector<double> &out) const;
};

} // namespace ghostsim
