#include <ghostsim/analysis.hpp>

#include <algorithm>
#include <cmath>

namespace ghostsim {

namespace {

constexpr std::size_t kSlabNodesPerZero = 16;

double first_zero_width(const OpticalLayout &layout) {
  return layout.wavelength * layout.s_object / (2.0 * layout.source_radius);
}

void require_focused(const OpticalLayout &layout) {
  if (std::abs(layout.delta_s()) > 1e-12 * layout.s_object)
    throw numeric_error(
        "closed-form image needs s_reference == s_object; use defocus_psf instead");
}

void append_slab(MaskQuadrature &q, double lo, double hi, double t_value, double step_hint) {
  const double t2 = t_value * t_value;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step_hint));
  const Grid g = Grid::midpoint(lo, hi, std::max<std::size_t>(n, 4));
  for (std::size_t i = 0; i < g.count; ++i) {
    q.alpha.push_back(g.position(i));
    q.weight.push_back(t2 * g.step);
  }
}

} // namespace

double sinc(double u) {
  if (std::abs(u) < 1e-6) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

MaskQuadrature mask_quadrature(const TransmissionMask &mask, const OpticalLayout &layout,
                               const Grid &beta_grid) {
  MaskQuadrature q;
  const double step_hint = first_zero_width(layout) / kSlabNodesPerZero;
  switch (mask.kind) {
  case TransmissionMask::Kind::pinhole:
  case TransmissionMask::Kind::double_pinhole:
    for (double c : mask.centers) {
      q.alpha.push_back(c);
      q.weight.push_back(1.0);
    }
    break;
  case TransmissionMask::Kind::double_slit:
    for (double c : mask.centers)
      append_slab(q, c - 0.5 * mask.slit_width, c + 0.5 * mask.slit_width, 1.0, step_hint);
    break;
  case TransmissionMask::Kind::uniform: {
    if (mask.value == 0.0) break;
    // Truncate the infinite aperture far enough out that the curve stays
    // flat over the requested grid to about one percent.
    const double margin = 24.0 * first_zero_width(layout);
    append_slab(q, beta_grid.start - margin, beta_grid.last() + margin, mask.value, step_hint);
    break;
  }
  case TransmissionMask::Kind::sampled:
    for (std::size_t i = 0; i < mask.sample_grid.count; ++i) {
      const double t = mask.samples[i];
      if (t == 0.0) continue;
      q.alpha.push_back(mask.sample_grid.position(i));
      q.weight.push_back(t * t * mask.sample_grid.step);
    }
    break;
  }
  return q;
}

AnalyticCurve gi_analytic(const TransmissionMask &mask, const OpticalLayout &layout,
                          const Grid &beta_grid) {
  validate(layout);
  require_focused(layout);
  const MaskQuadrature q = mask_quadrature(mask, layout, beta_grid);
  const double scale =
      2.0 * M_PI * layout.source_radius / (layout.wavelength * layout.s_object);
  AnalyticCurve curve{beta_grid, std::vector<double>(beta_grid.count, 0.0)};
  for (std::size_t j = 0; j < beta_grid.count; ++j) {
    const double beta = beta_grid.position(j);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.alpha.size(); ++i) {
      const double s = sinc(scale * (q.alpha[i] - beta));
      acc += q.weight[i] * s * s;
    }
    curve.values[j] = acc;
  }
  return curve;
}

AnalyticCurve scgi_analytic(const TransmissionMask &mask, const OpticalLayout &layout,
                            const Grid &beta_grid, bool include_cross) {
  validate(layout);
  require_focused(layout);
  const MaskQuadrature q = mask_quadrature(mask, layout, beta_grid);
  const double scale =
      2.0 * M_PI * layout.source_radius / (layout.wavelength * layout.s_object);
  AnalyticCurve curve{beta_grid, std::vector<double>(beta_grid.count, 0.0)};
  for (std::size_t j = 0; j < beta_grid.count; ++j) {
    const double beta = beta_grid.position(j);
    if (include_cross) {
      // Diagonal plus pair term is the square of the covariance sum.
      double g = 0.0;
      for (std::size_t i = 0; i < q.alpha.size(); ++i) {
        const double s = sinc(scale * (q.alpha[i] - beta));
        g += q.weight[i] * s * s;
      }
      curve.values[j] = g * g;
    } else {
      double d = 0.0;
      for (std::size_t i = 0; i < q.alpha.size(); ++i) {
        const double s = sinc(scale * (q.alpha[i] - beta));
        const double s2 = s * s;
        d += q.weight[i] * q.weight[i] * s2 * s2;
      }
      curve.values[j] = d;
    }
  }
  return curve;
}

AnalyticCurve scgi_cross_term(const TransmissionMask &mask, const OpticalLayout &layout,
                              const Grid &beta_grid) {
  AnalyticCurve total = scgi_analytic(mask, layout, beta_grid, true);
  const AnalyticCurve diag = scgi_analytic(mask, layout, beta_grid, false);
  for (std::size_t j = 0; j < total.values.size(); ++j) total.values[j] -= diag.values[j];
  return total;
}

AnalyticCurve defocus_psf(const OpticalLayout &layout, double alpha, const Grid &beta_grid,
                          std::size_t n_source) {
  validate(layout);
  const double r = layout.source_radius;
  const Grid src = Grid::midpoint(-r, r, n_source);
  const double inv_lam = 1.0 / layout.wavelength;
  const double amp = src.step / (layout.wavelength * layout.wavelength * layout.s_object *
                                 layout.s_reference);
  AnalyticCurve curve{beta_grid, std::vector<double>(beta_grid.count, 0.0)};
  for (std::size_t j = 0; j < beta_grid.count; ++j) {
    const double beta = beta_grid.position(j);
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < src.count; ++i) {
      const double x = src.position(i);
      const double da = x - alpha;
      const double db = x - beta;
      const double phase =
          -M_PI * inv_lam * (da * da / layout.s_object - db * db / layout.s_reference);
      re += std::cos(phase);
      im += std::sin(phase);
    }
    curve.values[j] = (re * re + im * im) * amp * amp;
  }
  return curve;
}

DefocusProfile::DefocusProfile(const OpticalLayout &layout, double u_max, std::size_t n_u,
                               std::size_t n_source)
    : u_max_(u_max) {
  validate(layout);
  if (n_u < 2 || !(u_max > 0.0)) throw numeric_error("defocus profile needs n_u >= 2, u_max > 0");
  const double r = layout.source_radius;
  const Grid src = Grid::midpoint(-r, r, n_source);
  const double chirp =
      -M_PI / layout.wavelength * layout.delta_s() / (layout.s_object * layout.s_reference);
  const double amp = src.step / (layout.wavelength * layout.wavelength * layout.s_object *
                                 layout.s_reference);
  std::vector<double> base_re(src.count), base_im(src.count);
  for (std::size_t i = 0; i < src.count; ++i) {
    const double x = src.position(i);
    base_re[i] = std::cos(chirp * x * x);
    base_im[i] = std::sin(chirp * x * x);
  }
  step_ = 2.0 * u_max / static_cast<double>(n_u - 1);
  values_.resize(n_u);
  const double wave_k = 2.0 * M_PI / layout.wavelength;
  for (std::size_t j = 0; j < n_u; ++j) {
    const double u = -u_max + static_cast<double>(j) * step_;
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < src.count; ++i) {
      const double ph = wave_k * src.position(i) * u;
      const double c = std::cos(ph);
      const double s = std::sin(ph);
      re += base_re[i] * c - base_im[i] * s;
      im += base_re[i] * s + base_im[i] * c;
    }
    values_[j] = (re * re + im * im) * amp * amp;
  }
}

double DefocusProfile::operator()(double u) const {
  const double t = (u + u_max_) / step_;
  if (t <= 0.0 || t >= static_cast<double>(values_.size() - 1))
    return (t == 0.0 || t == static_cast<double>(values_.size() - 1))
               ? values_[static_cast<std::size_t>(t)]
               : 0.0;
  const auto k = static_cast<std::size_t>(t);
  const double f = t - static_cast<double>(k);
  return values_[k] * (1.0 - f) + values_[k + 1] * f;
}

AnalyticCurve peak_normalized(const AnalyticCurve &curve) {
  const double peak = *std::max_element(curve.values.begin(), curve.values.end());
  if (!(peak > 0.0)) throw numeric_error("cannot peak-normalize a non-positive curve");
  AnalyticCurve out = curve;
  for (double &v : out.values) v /= peak;
  return out;
}

} // namespace ghostsim
