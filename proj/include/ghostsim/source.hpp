#pragma once
#include <cstdint>
#include <utility>

#include <ghostsim/optics.hpp>

namespace ghostsim {

// Per-frame source power fluctuation model. UniformRelative draws from
// [mean(1-delta), mean(1+delta)]; Gamma uses the shape giving sd/mean = delta.
// With hold_frames = H > 1 the power is re-drawn every H frames and held in
// between, modelling a source that drifts slowly compared to the frame rate.
enum class PowerKind { constant, uniform_relative, gamma };

struct PowerModel {
  PowerKind kind = PowerKind::constant;
  double mean_power = 1.0;       // W
  double delta = 0.0;            // relative spread, dimensionless
  std::uint64_t hold_frames = 1; // frames per power draw

  // Variance of a single draw in W^2.
  double variance() const;
};

// Deterministic per-frame randomness key: the same (master_seed, frame_index)
// always reproduces the same power and the same speckle field.
struct RngSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t frame_index = 0;
};

// Counter-keyed generator: an independent stream per (seed, frame, lane).
// xoshiro256++ state seeded through splitmix64.
class FrameRng {
public:
  FrameRng(std::uint64_t master_seed, std::uint64_t frame_index, std::uint64_t lane);

  std::uint64_t next_u64();
  double uniform01();                      // in [0, 1)
  std::pair<double, double> normal_pair(); // independent standard normals
  double gamma(double shape, double scale);

private:
  std::uint64_t s_[4];
};

// One power draw for the given frame. Constant returns mean_power exactly;
// the draw index is frame_index / hold_frames, so held frames share a value.
double sample_power(const PowerModel &model, const RngSeed &seed);

// Spatially incoherent speckle realization: every sample inside |x| <= R is an
// independent circular complex Gaussian with E|a|^2 = power / (2R), samples
// outside the source radius are exactly zero. The grid's quadrature cells must
// cover [-R, R].
ComplexField sample_speckle_field(const OpticalLayout &layout, const Grid &source_grid,
                                  double power, const RngSeed &seed);

} // namespace ghostsim
