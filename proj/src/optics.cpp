#include <ghostsim/optics.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ghostsim {

void validate(const OpticalLayout &layout) {
  if (!(layout.wavelength > 0.0)) throw config_error("wavelength must be positive");
  if (!(layout.s_object > 0.0)) throw config_error("s_object must be positive");
  if (!(layout.s_reference > 0.0)) throw config_error("s_reference must be positive");
  if (!(layout.source_radius > 0.0)) throw config_error("source_radius must be positive");
}

TransmissionMask TransmissionMask::pinhole(double center) {
  TransmissionMask m;
  m.kind = Kind::pinhole;
  m.centers = {center};
  return m;
}

TransmissionMask TransmissionMask::double_pinhole(double center1, double center2) {
  if (center1 == center2) throw numeric_error("double pinhole needs distinct centers");
  TransmissionMask m;
  m.kind = Kind::double_pinhole;
  m.centers = {std::min(center1, center2), std::max(center1, center2)};
  return m;
}

TransmissionMask TransmissionMask::double_slit(double width_a1, double center_distance_b1) {
  if (!(width_a1 > 0.0)) throw numeric_error("slit width must be positive");
  if (!(width_a1 < center_distance_b1))
    throw numeric_error("double slit needs width < center distance");
  TransmissionMask m;
  m.kind = Kind::double_slit;
  m.slit_width = width_a1;
  m.slit_distance = center_distance_b1;
  m.centers = {-0.5 * center_distance_b1, 0.5 * center_distance_b1};
  return m;
}

TransmissionMask TransmissionMask::uniform(double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw numeric_error("mask value must be in [0,1]");
  TransmissionMask m;
  m.kind = Kind::uniform;
  m.value = value;
  return m;
}

TransmissionMask TransmissionMask::sampled(const Grid &grid, std::vector<double> values) {
  if (values.size() != grid.count) throw numeric_error("sampled mask length must match its grid");
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0)) throw numeric_error("sampled mask values must be in [0,1]");
  TransmissionMask m;
  m.kind = Kind::sampled;
  m.sample_grid = grid;
  m.samples = std::move(values);
  return m;
}

double TransmissionMask::evaluate(double alpha) const {
  switch (kind) {
  case Kind::pinhole:
  case Kind::double_pinhole:
    for (double c : centers)
      if (alpha == c) return 1.0;
    return 0.0;
  case Kind::double_slit:
    for (double c : centers)
      if (std::abs(alpha - c) <= 0.5 * slit_width) return 1.0;
    return 0.0;
  case Kind::uniform:
    return value;
  case Kind::sampled: {
    if (alpha < sample_grid.start || alpha > sample_grid.last()) return 0.0;
    return samples[sample_grid.nearest(alpha)];
  }
  }
  return 0.0;
}

TransmissionMask TransmissionMask::shifted(double delta) const {
  TransmissionMask m = *this;
  for (double &c : m.centers) c += delta;
  if (kind == Kind::sampled) m.sample_grid.start += delta;
  return m;
}

std::complex<double> fresnel_kernel(double x, double target, double z, double wavelength) {
  if (!(z > 0.0)) throw numeric_error("fresnel_kernel needs z > 0");
  if (!(wavelength > 0.0)) throw numeric_error("fresnel_kernel needs wavelength > 0");
  const double lz = wavelength * z;
  const double d = x - target;
  // exp(-i k z)/(i lz) = exp(-i (k z + pi/2))/lz
  const double phase = -(2.0 * M_PI / wavelength) * z - 0.5 * M_PI - M_PI * d * d / lz;
  return std::polar(1.0 / lz, phase);
}

ComplexField propagate(const ComplexField &input, const Grid &target_grid, double z,
                       double wavelength) {
  if (input.grid.count == 0 || input.amplitude.empty())
    throw numeric_error("propagate needs a non-empty input field");
  ComplexField out = ComplexField::zeros(target_grid);
  const double dx = input.grid.step;
  for (std::size_t j = 0; j < target_grid.count; ++j) {
    const double t = target_grid.position(j);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < input.grid.count; ++i)
      acc += input.amplitude[i] * fresnel_kernel(input.grid.position(i), t, z, wavelength);
    out.amplitude[j] = acc * dx;
  }
  return out;
}

ComplexField apply_mask(const ComplexField &field, const TransmissionMask &mask) {
  ComplexField out = field;
  if (mask.is_point_mask()) {
    std::vector<std::size_t> keep;
    for (double c : mask.centers) keep.push_back(field.grid.nearest(c));
    for (std::size_t i = 0; i < out.amplitude.size(); ++i) {
      if (std::find(keep.begin(), keep.end(), i) == keep.end()) out.amplitude[i] = 0.0;
    }
    return out;
  }
  for (std::size_t i = 0; i < out.amplitude.size(); ++i)
    out.amplitude[i] *= mask.evaluate(field.grid.position(i));
  return out;
}

double bucket_detect(const ComplexField &field) {
  double acc = 0.0;
  for (const auto &a : field.amplitude) acc += std::norm(a);
  return acc * field.grid.step;
}

std::vector<double> pixel_detect(const ComplexField &field) {
  std::vector<double> out(field.amplitude.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(field.amplitude[i]);
  return out;
}

std::optional<std::string> sampling_warning(const Grid &source, const Grid &target, double z,
                                            double wavelength) {
  const double lo = std::min(source.start, target.start);
  const double hi = std::max(source.last(), target.last());
  const double extent = hi - lo;
  if (extent <= 0.0) return std::nullopt;
  const double limit = wavelength * z / (2.0 * extent);
  if (source.step <= limit) return std::nullopt;
  std::ostringstream os;
  os << "source step " << source.step << " m exceeds sampling limit " << limit
     << " m for z = " << z << " m; speckle statistics may be corrupted";
  return os.str();
}

KernelMatrix KernelMatrix::build(const Grid &target, const Grid &source, double z,
                                 double wavelength) {
  KernelMatrix k;
  k.rows = target.count;
  k.cols = source.count;
  k.re.resize(k.rows * k.cols);
  k.im.resize(k.rows * k.cols);
  const double dx = source.step;
  for (std::size_t j = 0; j < k.rows; ++j) {
    const double t = target.position(j);
    double *row_re = k.re.data() + j * k.cols;
    double *row_im = k.im.data() + j * k.cols;
    for (std::size_t i = 0; i < k.cols; ++i) {
      const std::complex<double> h = fresnel_kernel(source.position(i), t, z, wavelength) * dx;
      row_re[i] = h.real();
      row_im[i] = h.imag();
    }
  }
  return k;
}

void KernelMatrix::intensities(const std::vector<double> &src_re,
                               const std::vector<double> &src_im,
                               std::vector<double> &out) const {
  if (src_re.size() != cols || src_im.size() != cols)
    throw numeric_error("kernel matrix input length mismatch");
  out.resize(rows);
  const double *ar = src_re.data();
  const double *ai = src_im.data();
  for (std::size_t j = 0; j < rows; ++j) {
    const double *hr = re.data() + j * cols;
    const double *hi = im.data() + j * cols;
    // Four independent partial sums per component keep the reduction fast
    // without reassociating across runs.
    double r0 = 0.0, r1 = 0.0, r2 = 0.0, r3 = 0.0;
    double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= cols; i += 4) {
      r0 += hr[i] * ar[i] - hi[i] * ai[i];
      q0 += hr[i] * ai[i] + hi[i] * ar[i];
      r1 += hr[i + 1] * ar[i + 1] - hi[i + 1] * ai[i + 1];
      q1 += hr[i + 1] * ai[i + 1] + hi[i + 1] * ar[i + 1];
      r2 += hr[i + 2] * ar[i + 2] - hi[i + 2] * ai[i + 2];
      q2 += hr[i + 2] * ai[i + 2] + hi[i + 2] * ar[i + 2];
      r3 += hr[i + 3] * ar[i + 3] - hi[i + 3] * ai[i + 3];
      q3 += hr[i + 3] * ai[i + 3] + hi[i + 3] * ar[i + 3];
    }
    for (; i < cols; ++i) {
      r0 += hr[i] * ar[i] - hi[i] * ai[i];
      q0 += hr[i] * ai[i] + hi[i] * ar[i];
    }
    const double fr = (r0 + r1) + (r2 + r3);
    const double fi = (q0 + q1) + (q2 + q3);
    out[j] = fr * fr + fi * fi;
  }
}

} // namespace ghostsim
