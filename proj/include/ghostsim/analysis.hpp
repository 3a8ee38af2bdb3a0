#pragma once
#include <cstddef>
#include <vector>

#include <ghostsim/optics.hpp>

namespace ghostsim {

// Closed-form curve sampled on a grid.
struct AnalyticCurve {
  Grid grid;
  std::vector<double> values;
};

// sin(u)/u with the removable singularity filled in.
double sinc(double u);

// Quadrature nodes and |T|^2 weights shared by all closed-form images, so the
// algebraic identities between them hold at the discrete level. Point masks
// contribute unit point masses; extended masks midpoint quadrature cells.
struct MaskQuadrature {
  std::vector<double> alpha;
  std::vector<double> weight;
};
MaskQuadrature mask_quadrature(const TransmissionMask &mask, const OpticalLayout &layout,
                               const Grid &beta_grid);

// Covariance image of the focused system (s_r == s_o required):
// values[beta] = sum_i w_i sinc^2(2 pi R (alpha_i - beta) / (lambda z)).
AnalyticCurve gi_analytic(const TransmissionMask &mask, const OpticalLayout &layout,
                          const Grid &beta_grid);

// Second-cumulant image of the focused system. include_cross=false keeps the
// diagonal sinc^4 term only; include_cross=true adds the pair term, which
// completes the square of the covariance image.
AnalyticCurve scgi_analytic(const TransmissionMask &mask, const OpticalLayout &layout,
                            const Grid &beta_grid, bool include_cross);

// Pair term alone: scgi_analytic(true) - scgi_analytic(false) at shared nodes.
AnalyticCurve scgi_cross_term(const TransmissionMask &mask, const OpticalLayout &layout,
                              const Grid &beta_grid);

// Point response of the defocused system (s_r != s_o allowed):
// values[beta] = |integral over the source aperture of h_t(x, alpha; s_o) *
// conj(h_r(x, beta; s_r)) dx|^2 by direct complex quadrature with n_source
// midpoint nodes. Reduces to the sinc^2 kernel when s_r == s_o.
AnalyticCurve defocus_psf(const OpticalLayout &layout, double alpha, const Grid &beta_grid,
                          std::size_t n_source = 2048);

// The defocused kernel depends on its endpoints only through
// u = alpha/s_o - beta/s_r, so one sampled profile serves every (alpha, beta)
// pair. Used by the resolution solver to build two-point images cheaply.
class DefocusProfile {
public:
  DefocusProfile(const OpticalLayout &layout, double u_max, std::size_t n_u,
                 std::size_t n_source = 4096);
  // Linear interpolation; zero outside the sampled range.
  double operator()(double u) const;
  double u_max() const { return u_max_; }

private:
  double u_max_;
  double step_;
  std::vector<double> values_;
};

// Scale a curve so its maximum is 1; the maximum must be positive.
AnalyticCurve peak_normalized(const AnalyticCurve &curve);

} // namespace ghostsim
