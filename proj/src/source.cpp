#include <ghostsim/source.hpp>

#include <cmath>

namespace ghostsim {

namespace {

constexpr std::uint64_t kPowerLane = 0;
constexpr std::uint64_t kFieldLane = 1;

std::uint64_t splitmix64(std::uint64_t &state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void check(const PowerModel &m) {
  if (!(m.mean_power > 0.0)) throw numeric_error("power model needs mean_power > 0");
  if (m.hold_frames < 1) throw numeric_error("power model needs hold_frames >= 1");
  switch (m.kind) {
  case PowerKind::constant:
    break;
  case PowerKind::uniform_relative:
    if (!(m.delta >= 0.0 && m.delta < 1.0))
      throw numeric_error("uniform power model needs 0 <= delta < 1");
    break;
  case PowerKind::gamma:
    if (!(m.delta >= 0.0)) throw numeric_error("gamma power model needs delta >= 0");
    break;
  }
}

} // namespace

double PowerModel::variance() const {
  check(*this);
  switch (kind) {
  case PowerKind::constant:
    return 0.0;
  case PowerKind::uniform_relative:
    return mean_power * mean_power * delta * delta / 3.0;
  case PowerKind::gamma:
    return mean_power * mean_power * delta * delta;
  }
  return 0.0;
}

FrameRng::FrameRng(std::uint64_t master_seed, std::uint64_t frame_index, std::uint64_t lane) {
  std::uint64_t state = master_seed;
  state ^= splitmix64(state) + 0x9E3779B97F4A7C15ULL * (frame_index + 1);
  state ^= splitmix64(state) + 0xBF58476D1CE4E5B9ULL * (lane + 1);
  for (auto &word : s_) word = splitmix64(state);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t FrameRng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double FrameRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::pair<double, double> FrameRng::normal_pair() {
  // Polar rejection transform.
  while (true) {
    const double u = 2.0 * uniform01() - 1.0;
    const double v = 2.0 * uniform01() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      return {u * f, v * f};
    }
  }
}

double FrameRng::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) throw numeric_error("gamma needs positive parameters");
  if (shape < 1.0) {
    // Boost a shape+1 draw down by a uniform power.
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x, v;
    do {
      x = normal_pair().first;
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

double sample_power(const PowerModel &model, const RngSeed &seed) {
  check(model);
  if (model.kind == PowerKind::constant || model.delta == 0.0) return model.mean_power;
  FrameRng rng(seed.master_seed, seed.frame_index / model.hold_frames, kPowerLane);
  switch (model.kind) {
  case PowerKind::uniform_relative:
    return model.mean_power * (1.0 - model.delta + 2.0 * model.delta * rng.uniform01());
  case PowerKind::gamma: {
    const double shape = 1.0 / (model.delta * model.delta);
    const double scale = model.mean_power * model.delta * model.delta;
    return rng.gamma(shape, scale);
  }
  case PowerKind::constant:
    break;
  }
  return model.mean_power;
}

ComplexField sample_speckle_field(const OpticalLayout &layout, const Grid &source_grid,
                                  double power, const RngSeed &seed) {
  validate(layout);
  if (!(power > 0.0)) throw numeric_error("speckle field needs power > 0");
  const double r = layout.source_radius;
  const double half_cell = 0.5 * source_grid.step;
  if (source_grid.start - half_cell > -r || source_grid.last() + half_cell < r)
    throw numeric_error("source grid does not cover [-R, R]");

  ComplexField field = ComplexField::zeros(source_grid);
  const double sigma = std::sqrt(power / (2.0 * r) / 2.0); // per quadrature component
  FrameRng rng(seed.master_seed, seed.frame_index, kFieldLane);
  for (std::size_t i = 0; i < source_grid.count; ++i) {
    if (std::abs(source_grid.position(i)) > r) continue;
    const auto [g1, g2] = rng.normal_pair();
    field.amplitude[i] = std::complex<double>(sigma * g1, sigma * g2);
  }
  return field;
}

} // namespace ghostsim
