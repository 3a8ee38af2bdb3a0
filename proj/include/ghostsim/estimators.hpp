#pragma once
#include <cstdint>
#include <vector>

#include <ghostsim/optics.hpp>

namespace ghostsim {

/// Compensated (Neumaier) running sum; merging adds both parts, so an empty
/// sum is an exact identity element.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  void merge(const CompensatedSum &o) {
    add(o.sum);
    comp += o.comp;
  }
  double value() const { return sum + comp; }
};

/// @brief Streaming per-pixel joint power sums over frames.
///
/// Holds S_pq[beta] = sum_t I_t(beta)^p B_t^q for (p,q) in {(1,0),(2,0),(1,1),
/// (2,1),(1,2),(2,2)} plus the scalar sums of B and B^2. These raw sums are
/// enough to reconstruct both the covariance image and the second-cumulant
/// image in one pass, and two accumulators merge by componentwise addition.
struct MomentAccumulator {
  Grid beta_grid;
  std::uint64_t frames = 0;
  std::vector<CompensatedSum> s10, s20, s11, s21, s12, s22;
  CompensatedSum sb, sb2;

  explicit MomentAccumulator(const Grid &grid);
};

/// Reconstruction output with the estimator that produced it.
struct ReconstructedImage {
  enum class Method { gi, scgi, cumulant };
  Grid beta_grid;
  std::vector<double> values;
  Method method = Method::gi;
  int order = 0; ///< Cumulant order for Method::cumulant
};

/// @brief Fold one frame into the accumulator.
void accumulate(MomentAccumulator &acc, const FrameRecord &frame);

/// @brief Componentwise sum of two accumulators over the same grid.
MomentAccumulator merge(const MomentAccumulator &a, const MomentAccumulator &b);

/// @brief Covariance image values[beta] = <I B> - <I><B> (population moments).
ReconstructedImage gi_image(const MomentAccumulator &acc);

/// @brief Second-cumulant image: per-pixel variance of the per-frame
/// fluctuation product g_t(beta) = (I_t(beta) - <I>)(B_t - <B>), expanded
/// from the stored raw moments. Degenerate pixels yield exactly 0.
ReconstructedImage scgi_image(const MomentAccumulator &acc);

/// @brief Definitional two-pass oracle for scgi_image: explicit means first,
/// then the variance of the g_t samples.
ReconstructedImage two_pass_scgi(const std::vector<FrameRecord> &frames, const Grid &beta_grid);

/// @brief nth cumulant (n in 1..4) of the g_t samples per pixel.
/// n=1 reproduces gi_image and n=2 reproduces two_pass_scgi exactly.
ReconstructedImage cumulant_image(const std::vector<FrameRecord> &frames, const Grid &beta_grid,
                                  int order);

/// @brief Block-averaged second-cumulant estimator.
///
/// Frames are grouped into fixed-size blocks; each completed block yields a
/// per-pixel covariance, and the image is the per-pixel variance of those
/// block covariances. A trailing partial block is discarded. This alternative
/// mode trades frame count for robustness when the source power drifts slowly.
class BlockedScgiAccumulator {
public:
  BlockedScgiAccumulator(const Grid &grid, std::uint64_t block_frames);

  void accumulate(const FrameRecord &frame);
  /// Merge a peer accumulator; both must sit on a block boundary.
  void merge_from(const BlockedScgiAccumulator &other);
  std::uint64_t complete_blocks() const { return blocks_; }
  std::uint64_t block_frames() const { return block_; }
  /// Variance of block covariances; needs at least 2 complete blocks.
  ReconstructedImage image() const;

private:
  void close_block();

  Grid grid_;
  std::uint64_t block_ = 0;
  std::uint64_t in_block_ = 0;
  std::uint64_t blocks_ = 0;
  std::vector<double> block_i_, block_ib_;
  double block_b_ = 0.0;
  std::vector<CompensatedSum> cov_sum_, cov_sq_sum_;
};

} // namespace ghostsim
