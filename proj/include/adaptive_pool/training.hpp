#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "adaptive_pool/grid.hpp"
#include "adaptive_pool/image.hpp"
#include "adaptive_pool/importance.hpp"
#include "adaptive_pool/lr_schedule.hpp"
#include "adaptive_pool/rng.hpp"

namespace adaptive_pool {

/// Synthetic region-sensitive regression task. Images are size x size with
/// i.i.d. pixel intensities; the target is [mean intensity inside the hidden
/// ROI, ROI centre x / size].
struct ToyTask {
  std::uint64_t seed = 0;
  int size = 32;
  Roi roi{12, 12, 8, 8};

  /// Task with an 8x8 (roi_size) ROI placed from `seed`.
  static ToyTask make(std::uint64_t seed, int size = 32, int roi_size = 8);

  struct Sample {
    Image image;
    std::array<double, 2> target;
  };
  Sample sample(Rng& rng) const;
  std::array<double, 2> target_of(const Image& image) const;
};

/// Affine map from a stride-4 downsample of the image (4x4 block means,
/// shifted by -0.5) to interior border offsets, column borders first, then
/// row borders. One unit of affine output moves a border by one base cell
/// width (image_size / k pixels).
class OffsetPredictor {
 public:
  static constexpr int kStride = 4;

  OffsetPredictor(int image_size, int k);

  int inputs() const { return inputs_; }
  int outputs() const { return outputs_; }
  std::vector<double> features(const Image& image) const;
  OffsetVector predict(std::span<const double> features) const;

  /// weights -= lr * grad_w, bias -= lr * grad_b
  /// `grad_w` and `grad_b` are gradients w.r.t. the affine parameters.
  void update(double lr, std::span<const double> grad_w, std::span<const double> grad_b);

  /// Pixels per unit of affine output.
  double output_scale() const { return static_cast<double>(image_size_) / k_; }

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }

 private:
  int image_size_;
  int k_;
  int inputs_;
  int outputs_;
  std::vector<double> weights_;  // outputs x inputs, row-major
  std::vector<double> bias_;
};

enum class GridMode { Learned, Uniform, Importance };
std::string_view grid_mode_name(GridMode mode);
std::optional<GridMode> parse_grid_mode(std::string_view name);

struct TrainConfig {
  int k = 6;
  int iters = 2000;
  double base_lr = 0.01;
  bool dynamic_lr = true;
  int batch = 16;
  double readout_lr = 1e-2;
  int eval_samples = 256;
  GridMode grid_mode = GridMode::Learned;
  std::uint64_t seed = 0;
};

struct TrainingReport {
  GridMode grid_mode = GridMode::Learned;
  bool dynamic_lr = true;
  std::vector<double> loss;      // per-iteration batch mean Euclidean loss
  std::vector<double> lr;        // offset-head rate used at each iteration
  std::vector<double> overpass;  // per-iteration mean overpass fraction
  double final_loss = 0.0;       // mean loss on the held-out set
  double final_lr = 0.0;
  /// Mean discretized area of cells intersecting / not intersecting the ROI,
  /// averaged over the held-out set.
  double roi_cell_area = 0.0;
  double background_cell_area = 0.0;
  std::optional<PoolGrid> final_grid;  // grid used for the first held-out image
};

/// End-to-end toy training: predictor -> apply_offsets -> discretize ->
/// pool_forward -> linear readout of (cell means - 0.5) -> Euclidean loss, backward through the
/// numerical border gradients. Throws DivergenceError on a non-finite loss.
TrainingReport train_demo(const ToyTask& task, const TrainConfig& config);

}  // namespace adaptive_pool
