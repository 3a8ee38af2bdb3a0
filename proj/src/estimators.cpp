#include <ghostsim/estimators.hpp>

#include <cmath>

namespace ghostsim {

namespace {

void require_frames(std::uint64_t have, std::uint64_t need) {
  if (have < need) throw numeric_error("insufficient data: estimator needs more frames");
}

// Zero out variance-like values that are negative or drowned by rounding.
double clean_variance(double v, double scale) {
  if (!(v > 1e-12 * scale)) return 0.0;
  return v;
}

} // namespace

MomentAccumulator::MomentAccumulator(const Grid &grid)
    : beta_grid(grid), s10(grid.count), s20(grid.count), s11(grid.count), s21(grid.count),
      s12(grid.count), s22(grid.count) {}

void accumulate(MomentAccumulator &acc, const FrameRecord &frame) {
  if (frame.pixel_intensity.size() != acc.beta_grid.count)
    throw numeric_error("frame pixel count does not match accumulator grid");
  const double b = frame.bucket;
  const double b2 = b * b;
  for (std::size_t i = 0; i < acc.beta_grid.count; ++i) {
    const double x = frame.pixel_intensity[i];
    const double x2 = x * x;
    acc.s10[i].add(x);
    acc.s20[i].add(x2);
    acc.s11[i].add(x * b);
    acc.s21[i].add(x2 * b);
    acc.s12[i].add(x * b2);
    acc.s22[i].add(x2 * b2);
  }
  acc.sb.add(b);
  acc.sb2.add(b2);
  acc.frames += 1;
}

MomentAccumulator merge(const MomentAccumulator &a, const MomentAccumulator &b) {
  if (!a.beta_grid.same_axis(b.beta_grid))
    throw numeric_error("cannot merge accumulators over different grids");
  MomentAccumulator out = a;
  for (std::size_t i = 0; i < out.beta_grid.count; ++i) {
    out.s10[i].merge(b.s10[i]);
    out.s20[i].merge(b.s20[i]);
    out.s11[i].merge(b.s11[i]);
    out.s21[i].merge(b.s21[i]);
    out.s12[i].merge(b.s12[i]);
    out.s22[i].merge(b.s22[i]);
  }
  out.sb.merge(b.sb);
  out.sb2.merge(b.sb2);
  out.frames += b.frames;
  return out;
}

ReconstructedImage gi_image(const MomentAccumulator &acc) {
  require_frames(acc.frames, 2);
  const double n = static_cast<double>(acc.frames);
  const double b = acc.sb.value() / n;
  ReconstructedImage img{acc.beta_grid, std::vector<double>(acc.beta_grid.count),
                         ReconstructedImage::Method::gi, 0};
  for (std::size_t i = 0; i < img.values.size(); ++i)
    img.values[i] = acc.s11[i].value() / n - (acc.s10[i].value() / n) * b;
  return img;
}

ReconstructedImage scgi_image(const MomentAccumulator &acc) {
  require_frames(acc.frames, 2);
  const double n = static_cast<double>(acc.frames);
  const double b = acc.sb.value() / n;
  const double m02 = acc.sb2.value() / n;
  ReconstructedImage img{acc.beta_grid, std::vector<double>(acc.beta_grid.count),
                         ReconstructedImage::Method::scgi, 0};
  for (std::size_t i = 0; i < img.values.size(); ++i) {
    const double a = acc.s10[i].value() / n;
    const double m20 = acc.s20[i].value() / n;
    const double m11 = acc.s11[i].value() / n;
    const double m21 = acc.s21[i].value() / n;
    const double m12 = acc.s12[i].value() / n;
    const double m22 = acc.s22[i].value() / n;
    // <g^2> with g = (I - a)(B - b), expanded in raw joint moments.
    const double g2 = m22 - 2.0 * a * m12 - 2.0 * b * m21 + a * a * m02 + b * b * m20 +
                      4.0 * a * b * m11 - 3.0 * a * a * b * b;
    const double g1 = m11 - a * b;
    img.values[i] = clean_variance(g2 - g1 * g1, m20 * m02);
  }
  return img;
}

ReconstructedImage two_pass_scgi(const std::vector<FrameRecord> &frames, const Grid &beta_grid) {
  require_frames(frames.size(), 2);
  const std::size_t np = beta_grid.count;
  const double n = static_cast<double>(frames.size());

  std::vector<CompensatedSum> isum(np);
  CompensatedSum bsum;
  for (const auto &f : frames) {
    if (f.pixel_intensity.size() != np)
      throw numeric_error("frame pixel count does not match grid");
    for (std::size_t i = 0; i < np; ++i) isum[i].add(f.pixel_intensity[i]);
    bsum.add(f.bucket);
  }
  std::vector<double> imean(np);
  for (std::size_t i = 0; i < np; ++i) imean[i] = isum[i].value() / n;
  const double bmean = bsum.value() / n;

  std::vector<CompensatedSum> g1(np), g2(np), i20(np);
  CompensatedSum b20;
  for (const auto &f : frames) {
    const double db = f.bucket - bmean;
    b20.add(f.bucket * f.bucket);
    for (std::size_t i = 0; i < np; ++i) {
      const double g = (f.pixel_intensity[i] - imean[i]) * db;
      g1[i].add(g);
      g2[i].add(g * g);
      i20[i].add(f.pixel_intensity[i] * f.pixel_intensity[i]);
    }
  }
  ReconstructedImage img{beta_grid, std::vector<double>(np), ReconstructedImage::Method::scgi, 0};
  for (std::size_t i = 0; i < np; ++i) {
    const double m1 = g1[i].value() / n;
    const double m2 = g2[i].value() / n;
    img.values[i] = clean_variance(m2 - m1 * m1, (i20[i].value() / n) * (b20.value() / n));
  }
  return img;
}

ReconstructedImage cumulant_image(const std::vector<FrameRecord> &frames, const Grid &beta_grid,
                                  int order) {
  if (order < 1 || order > 4) throw numeric_error("unsupported cumulant order (valid: 1..4)");
  require_frames(frames.size(), static_cast<std::uint64_t>(order) < 2 ? 2 : order);

  if (order == 1) {
    MomentAccumulator acc(beta_grid);
    for (const auto &f : frames) accumulate(acc, f);
    ReconstructedImage img = gi_image(acc);
    img.method = ReconstructedImage::Method::cumulant;
    img.order = 1;
    return img;
  }
  if (order == 2) {
    ReconstructedImage img = two_pass_scgi(frames, beta_grid);
    img.method = ReconstructedImage::Method::cumulant;
    img.order = 2;
    return img;
  }

  const std::size_t np = beta_grid.count;
  const double n = static_cast<double>(frames.size());

  std::vector<CompensatedSum> isum(np);
  CompensatedSum bsum;
  for (const auto &f : frames) {
    if (f.pixel_intensity.size() != np)
      throw numeric_error("frame pixel count does not match grid");
    for (std::size_t i = 0; i < np; ++i) isum[i].add(f.pixel_intensity[i]);
    bsum.add(f.bucket);
  }
  std::vector<double> imean(np);
  for (std::size_t i = 0; i < np; ++i) imean[i] = isum[i].value() / n;
  const double bmean = bsum.value() / n;

  std::vector<CompensatedSum> gsum(np);
  for (const auto &f : frames) {
    const double db = f.bucket - bmean;
    for (std::size_t i = 0; i < np; ++i)
      gsum[i].add((f.pixel_intensity[i] - imean[i]) * db);
  }
  std::vector<double> gmean(np);
  for (std::size_t i = 0; i < np; ++i) gmean[i] = gsum[i].value() / n;

  std::vector<CompensatedSum> c2(np), c3(np), c4(np);
  for (const auto &f : frames) {
    const double db = f.bucket - bmean;
    for (std::size_t i = 0; i < np; ++i) {
      const double d = (f.pixel_intensity[i] - imean[i]) * db - gmean[i];
      const double d2 = d * d;
      c2[i].add(d2);
      if (order == 3)
        c3[i].add(d2 * d);
      else
        c4[i].add(d2 * d2);
    }
  }
  ReconstructedImage img{beta_grid, std::vector<double>(np), ReconstructedImage::Method::cumulant,
                         order};
  for (std::size_t i = 0; i < np; ++i) {
    if (order == 3) {
      img.values[i] = c3[i].value() / n;
    } else {
      const double m2 = c2[i].value() / n;
      img.values[i] = c4[i].value() / n - 3.0 * m2 * m2;
    }
  }
  return img;
}

BlockedScgiAccumulator::BlockedScgiAccumulator(const Grid &grid, std::uint64_t block_frames)
    : grid_(grid), block_(block_frames), block_i_(grid.count), block_ib_(grid.count),
      cov_sum_(grid.count), cov_sq_sum_(grid.count) {
  if (block_ < 2) throw numeric_error("blocked estimator needs block_frames >= 2");
}

void BlockedScgiAccumulator::accumulate(const FrameRecord &frame) {
  if (frame.pixel_intensity.size() != grid_.count)
    throw numeric_error("frame pixel count does not match accumulator grid");
  const double b = frame.bucket;
  for (std::size_t i = 0; i < grid_.count; ++i) {
    block_i_[i] += frame.pixel_intensity[i];
    block_ib_[i] += frame.pixel_intensity[i] * b;
  }
  block_b_ += b;
  if (++in_block_ == block_) close_block();
}

void BlockedScgiAccumulator::close_block() {
  const double m = static_cast<double>(block_);
  const double bmean = block_b_ / m;
  for (std::size_t i = 0; i < grid_.count; ++i) {
    const double c = block_ib_[i] / m - (block_i_[i] / m) * bmean;
    cov_sum_[i].add(c);
    cov_sq_sum_[i].add(c * c);
    block_i_[i] = 0.0;
    block_ib_[i] = 0.0;
  }
  block_b_ = 0.0;
  in_block_ = 0;
  blocks_ += 1;
}

void BlockedScgiAccumulator::merge_from(const BlockedScgiAccumulator &other) {
  if (!grid_.same_axis(other.grid_) || block_ != other.block_)
    throw numeric_error("cannot merge blocked accumulators with different shapes");
  if (in_block_ != 0 || other.in_block_ != 0)
    throw numeric_error("blocked accumulators merge only on block boundaries");
  for (std::size_t i = 0; i < grid_.count; ++i) {
    cov_sum_[i].merge(other.cov_sum_[i]);
    cov_sq_sum_[i].merge(other.cov_sq_sum_[i]);
  }
  blocks_ += other.blocks_;
}

ReconstructedImage BlockedScgiAccumulator::image() const {
  if (blocks_ < 2) throw numeric_error("insufficient data: need at least 2 complete blocks");
  const double k = static_cast<double>(blocks_);
  ReconstructedImage img{grid_, std::vector<double>(grid_.count),
                         ReconstructedImage::Method::scgi, 0};
  for (std::size_t i = 0; i < grid_.count; ++i) {
    const double m1 = cov_sum_[i].value() / k;
    const double m2 = cov_sq_sum_[i].value() / k;
    img.values[i] = clean_variance(m2 - m1 * m1, m2);
  }
  return img;
}

} // namespace ghostsim
