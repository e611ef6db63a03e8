#include "adaptive_pool/training.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adaptive_pool/errors.hpp"
#include "adaptive_pool/kernels.hpp"
#include "adaptive_pool/pool_ops.hpp"

namespace adaptive_pool {

namespace {

constexpr std::uint64_t kTrainStream = 1;
constexpr std::uint64_t kEvalStream = 2;
// Pixel values live in [0, 1]; the readout sees cell means shifted to mid-gray.
constexpr double kReadoutCentre = 0.5;

bool intersects(const Roi& roi, int x0, int x1, int y0, int y1) {
  return x0 < roi.x + roi.w && roi.x < x1 && y0 < roi.y + roi.h && roi.y < y1;
}

// Linear map from the flattened pooled map to the 2-vector prediction.
struct Readout {
  int inputs;
  std::vector<double> weights;  // 2 x inputs
  std::array<double, 2> bias{0.0, 0.0};

  explicit Readout(int n) : inputs(n), weights(2 * static_cast<std::size_t>(n), 0.0) {}

  std::span<const double> row(int o) const {
    return std::span<const double>(weights).subspan(static_cast<std::size_t>(o * inputs),
                                                    static_cast<std::size_t>(inputs));
  }
  std::span<double> row(int o) {
    return std::span<double>(weights).subspan(static_cast<std::size_t>(o * inputs),
                                              static_cast<std::size_t>(inputs));
  }

  std::array<double, 2> apply(std::span<const double> pooled) const {
    const auto& k = kernels::active();
    return {k.dot(row(0), pooled) + bias[0], k.dot(row(1), pooled) + bias[1]};
  }
};

struct Forward {
  PoolGrid real_grid;
  PoolGrid grid;
  ClampReport clamp;
  std::vector<double> features;
  PooledMap pooled;
  std::vector<double> readout_in;
  std::array<double, 2> prediction{};
};

class Model {
 public:
  Model(const ToyTask& task, const TrainConfig& config)
      : task_(task),
        config_(config),
        base_(uniform_grid(task.size, task.size, config.k, config.k)),
        frozen_(frozen_grid(task, config, base_)),
        predictor_(task.size, config.k),
        readout_(config.k * config.k) {}

  Forward forward(const Image& image) const {
    Forward f{base_, frozen_, ClampReport{}, {}, PooledMap{}, {}, {}};
    if (config_.grid_mode == GridMode::Learned) {
      f.features = predictor_.features(image);
      ClampedGrid clamped = apply_offsets(base_, predictor_.predict(f.features));
      f.real_grid = std::move(clamped.grid);
      f.clamp = std::move(clamped.report);
      f.grid = discretize(f.real_grid);
    } else {
      f.clamp.total_movable = frozen_.total_movable();
    }
    f.pooled = pool_forward(image, f.grid);
    f.readout_in.assign(f.pooled.data().begin(), f.pooled.data().end());
    for (double& v : f.readout_in) v -= kReadoutCentre;
    f.prediction = readout_.apply(f.readout_in);
    return f;
  }

  bool learned() const { return config_.grid_mode == GridMode::Learned; }
  OffsetPredictor& predictor() { return predictor_; }
  Readout& readout() { return readout_; }
  const Readout& readout() const { return readout_; }

 private:
  static PoolGrid frozen_grid(const ToyTask& task, const TrainConfig& config, const PoolGrid& base) {
    if (config.grid_mode == GridMode::Importance) {
      RoiSpec spec;
      spec.rois.push_back(task.roi);
      return grid_from_importance(build_map(spec, task.size, task.size), config.k, config.k);
    }
    return discretize(base);
  }

  ToyTask task_;
  TrainConfig config_;
  PoolGrid base_;
  PoolGrid frozen_;
  OffsetPredictor predictor_;
  Readout readout_;
};

double euclidean(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

void check_config(const ToyTask& task, const TrainConfig& config) {
  if (config.iters < 1) throw ArgumentError("iters must be >= 1");
  if (config.batch < 1) throw ArgumentError("batch must be >= 1");
  if (config.eval_samples < 1) throw ArgumentError("eval_samples must be >= 1");
  if (config.k < 1 || config.k > task.size) throw SizingError("K must lie in [1, image size]");
  if (config.base_lr < 0.0) throw ArgumentError("learning rate must be non-negative");
  if (config.readout_lr < 0.0) throw ArgumentError("readout learning rate must be non-negative");
}

}  // namespace

ToyTask ToyTask::make(std::uint64_t seed, int size, int roi_size) {
  if (roi_size < 1 || roi_size > size) throw ArgumentError("ROI does not fit the image");
  Rng rng(mix_seed(seed, 0));
  ToyTask task;
  task.seed = seed;
  task.size = size;
  const int margin = std::min(2, (size - roi_size) / 2);
  task.roi = Roi{rng.uniform_int(margin, size - roi_size - margin),
                 rng.uniform_int(margin, size - roi_size - margin), roi_size, roi_size};
  return task;
}

ToyTask::Sample ToyTask::sample(Rng& rng) const {
  Image image(size, size, 1);
  for (double& v : image.data()) v = rng.uniform();
  auto target = target_of(image);
  return Sample{std::move(image), target};
}

std::array<double, 2> ToyTask::target_of(const Image& image) const {
  double total = 0.0;
  for (int y = roi.y; y < roi.y + roi.h; ++y) {
    for (int x = roi.x; x < roi.x + roi.w; ++x) total += image.at(x, y);
  }
  const double mean = total / (static_cast<double>(roi.w) * roi.h);
  const double centre_x = (roi.x + 0.5 * roi.w) / size;
  return {mean, centre_x};
}

OffsetPredictor::OffsetPredictor(int image_size, int k)
    : image_size_(image_size),
      k_(k),
      inputs_(((image_size + kStride - 1) / kStride) * ((image_size + kStride - 1) / kStride)),
      outputs_(2 * (k - 1)),
      weights_(static_cast<std::size_t>(inputs_) * static_cast<std::size_t>(outputs_), 0.0),
      bias_(static_cast<std::size_t>(outputs_), 0.0) {}

std::vector<double> OffsetPredictor::features(const Image& image) const {
  if (image.width() != image_size_ || image.height() != image_size_) {
    throw DimensionError("predictor expects a " + std::to_string(image_size_) + "x" +
                         std::to_string(image_size_) + " image");
  }
  std::vector<double> f;
  f.reserve(static_cast<std::size_t>(inputs_));
  for (int y0 = 0; y0 < image_size_; y0 += kStride) {
    for (int x0 = 0; x0 < image_size_; x0 += kStride) {
      const int x1 = std::min(image_size_, x0 + kStride);
      const int y1 = std::min(image_size_, y0 + kStride);
      double total = 0.0;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) total += image.at(x, y);
      }
      f.push_back(total / (static_cast<double>(x1 - x0) * (y1 - y0)) - 0.5);
    }
  }
  return f;
}

OffsetVector OffsetPredictor::predict(std::span<const double> features) const {
  const auto& k = kernels::active();
  const auto n = static_cast<std::size_t>(inputs_);
  OffsetVector out;
  out.cols.resize(static_cast<std::size_t>(k_ - 1));
  out.rows.resize(static_cast<std::size_t>(k_ - 1));
  for (int o = 0; o < outputs_; ++o) {
    double v =
        k.dot(std::span<const double>(weights_).subspan(static_cast<std::size_t>(o) * n, n),
              features) +
        bias_[static_cast<std::size_t>(o)];
    v *= output_scale();
    if (o < k_ - 1) {
      out.cols[static_cast<std::size_t>(o)] = v;
    } else {
      out.rows[static_cast<std::size_t>(o - (k_ - 1))] = v;
    }
  }
  return out;
}

void OffsetPredictor::update(double lr, std::span<const double> grad_w,
                             std::span<const double> grad_b) {
  const auto& k = kernels::active();
  k.axpy(-lr, grad_w, weights_);
  k.axpy(-lr, grad_b, bias_);
}

std::string_view grid_mode_name(GridMode mode) {
  switch (mode) {
    case GridMode::Learned:
      return "learned";
    case GridMode::Uniform:
      return "uniform";
    case GridMode::Importance:
      return "importance";
  }
  return "unknown";
}

std::optional<GridMode> parse_grid_mode(std::string_view name) {
  for (GridMode m : {GridMode::Learned, GridMode::Uniform, GridMode::Importance}) {
    if (name == grid_mode_name(m)) return m;
  }
  return std::nullopt;
}

TrainingReport train_demo(const ToyTask& task, const TrainConfig& config) {
  check_config(task, config);
  const auto& k = kernels::active();

  Model model(task, config);
  std::optional<LrState> controller;
  if (config.dynamic_lr) controller = LrState::initial(config.base_lr);

  const int cells = config.k * config.k;
  const auto n_cells = static_cast<std::size_t>(cells);
  const auto n_feat = static_cast<std::size_t>(model.predictor().inputs());
  const auto n_out = static_cast<std::size_t>(model.predictor().outputs());
  const double inv_batch = 1.0 / config.batch;

  TrainingReport report;
  report.grid_mode = config.grid_mode;
  report.dynamic_lr = config.dynamic_lr;
  report.loss.reserve(static_cast<std::size_t>(config.iters));
  report.lr.reserve(static_cast<std::size_t>(config.iters));
  report.overpass.reserve(static_cast<std::size_t>(config.iters));

  Rng data(mix_seed(mix_seed(task.seed, config.seed), kTrainStream));
  std::vector<double> grad_readout(2 * n_cells);
  std::vector<double> grad_w(n_out * n_feat);
  std::vector<double> grad_b(n_out);
  std::vector<double> upstream_flat(n_cells);
  std::vector<double> offset_grad(n_out);

  for (int it = 0; it < config.iters; ++it) {
    const double offset_lr = controller ? controller->lr : config.base_lr;
    std::fill(grad_readout.begin(), grad_readout.end(), 0.0);
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    std::fill(grad_b.begin(), grad_b.end(), 0.0);
    std::array<double, 2> grad_readout_bias{0.0, 0.0};
    double loss = 0.0;
    double overpass = 0.0;

    for (int b = 0; b < config.batch; ++b) {
      const ToyTask::Sample s = task.sample(data);
      const Forward f = model.forward(s.image);
      overpass += f.clamp.fraction();

      const std::array<double, 2> err{f.prediction[0] - s.target[0],
                                      f.prediction[1] - s.target[1]};
      const double dist = std::hypot(err[0], err[1]);
      loss += dist;
      if (dist == 0.0) continue;
      const std::array<double, 2> unit{err[0] / dist, err[1] / dist};

      for (int o = 0; o < 2; ++o) {
        k.axpy(unit[o], f.readout_in,
               std::span<double>(grad_readout).subspan(static_cast<std::size_t>(o) * n_cells, n_cells));
        grad_readout_bias[o] += unit[o];
      }
      if (!model.learned()) continue;

      std::fill(upstream_flat.begin(), upstream_flat.end(), 0.0);
      for (int o = 0; o < 2; ++o) k.axpy(unit[o], model.readout().row(o), upstream_flat);
      const PooledMap upstream(config.k, config.k, 1, upstream_flat);
      const BorderGradient bg = chain_border_gradients(s.image, f.real_grid, upstream);

      // Clamped offsets receive no gradient: the clamp absorbed them.
      const std::size_t n_cols = bg.cols.size();
      for (std::size_t j = 0; j < n_out; ++j) {
        const bool is_col = j < n_cols;
        const std::size_t idx = is_col ? j : j - n_cols;
        const bool clamped = is_col ? f.clamp.col_flags[idx] : f.clamp.row_flags[idx];
        offset_grad[j] = clamped ? 0.0 : (is_col ? bg.cols[idx] : bg.rows[idx]);
      }
      // d(offset)/d(affine output) is the predictor's output scale.
      for (double& g : offset_grad) g *= model.predictor().output_scale();
      for (std::size_t j = 0; j < n_out; ++j) {
        k.axpy(offset_grad[j], f.features, std::span<double>(grad_w).subspan(j * n_feat, n_feat));
        grad_b[j] += offset_grad[j];
      }
    }

    loss *= inv_batch;
    overpass *= inv_batch;
    if (!std::isfinite(loss)) {
      throw DivergenceError("loss became non-finite at iteration " + std::to_string(it));
    }

    Readout& readout = model.readout();
    k.axpy(-config.readout_lr * inv_batch, grad_readout, readout.weights);
    for (int o = 0; o < 2; ++o) readout.bias[o] -= config.readout_lr * inv_batch * grad_readout_bias[o];
    if (model.learned()) {
      for (double& g : grad_w) g *= inv_batch;
      for (double& g : grad_b) g *= inv_batch;
      model.predictor().update(offset_lr, grad_w, grad_b);
    }

    report.loss.push_back(loss);
    report.lr.push_back(offset_lr);
    report.overpass.push_back(overpass);
    if (controller) *controller = lr_step(*controller, overpass);
  }
  report.final_lr = controller ? controller->lr : config.base_lr;

  Rng eval(mix_seed(task.seed, kEvalStream));
  double eval_loss = 0.0;
  double roi_area = 0.0;
  double roi_cells = 0.0;
  double bg_area = 0.0;
  double bg_cells = 0.0;
  for (int n = 0; n < config.eval_samples; ++n) {
    const ToyTask::Sample s = task.sample(eval);
    const Forward f = model.forward(s.image);
    eval_loss += euclidean(f.prediction, s.target);
    if (n == 0) report.final_grid = f.grid;
    const auto cols = pixel_edges(f.grid, Axis::Cols);
    const auto rows = pixel_edges(f.grid, Axis::Rows);
    for (int j = 0; j < config.k; ++j) {
      for (int i = 0; i < config.k; ++i) {
        const double area = static_cast<double>(cols[i + 1] - cols[i]) * (rows[j + 1] - rows[j]);
        if (intersects(task.roi, cols[i], cols[i + 1], rows[j], rows[j + 1])) {
          roi_area += area;
          roi_cells += 1.0;
        } else {
          bg_area += area;
          bg_cells += 1.0;
        }
      }
    }
  }
  report.final_loss = eval_loss / config.eval_samples;
  report.roi_cell_area = roi_cells > 0.0 ? roi_area / roi_cells : 0.0;
  report.background_cell_area = bg_cells > 0.0 ? bg_area / bg_cells : 0.0;
  return report;
}

}  // namespace adaptive_pool
