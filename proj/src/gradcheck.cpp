#include "adaptive_pool/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "adaptive_pool/grid.hpp"
#include "adaptive_pool/pool_ops.hpp"
#include "adaptive_pool/rng.hpp"

namespace adaptive_pool {

namespace {

// Loss-difference oracle: re-pools the whole perturbed grid and sums
// upstream * (y' - y) / h over every cell, no locality shortcuts.
double brute_force_border(const Image& image, const PoolGrid& grid, const PooledMap& upstream,
                          Axis axis, int index, int h) {
  const auto& b = grid.borders(axis);
  const auto j = static_cast<std::size_t>(index);
  if (b[j] + h > b[j + 1] - 1.0) return 0.0;
  const PooledMap y = pool_forward(image, discretize(grid));
  const PooledMap y_moved =
      pool_forward(image, discretize(grid.with_border(axis, index, b[j] + h)));
  double total = 0.0;
  for (int c = 0; c < y.channels(); ++c) {
    for (int r = 0; r < y.height(); ++r) {
      for (int i = 0; i < y.width(); ++i) {
        total += upstream.at(i, r, c) * ((y_moved.at(i, r, c) - y.at(i, r, c)) / h);
      }
    }
  }
  return total;
}

double linear_loss(const Image& image, const PoolGrid& grid, const PooledMap& upstream) {
  const PooledMap y = pool_forward(image, grid);
  double total = 0.0;
  for (std::size_t n = 0; n < y.size(); ++n) total += upstream.data()[n] * y.data()[n];
  return total;
}

GradcheckEntry check_instance(Rng& rng, int instance) {
  GradcheckEntry e;
  e.instance = instance;
  const bool constant = instance % 10 == 0;
  const bool tight = instance % 10 == 5;
  e.kind = constant ? "constant" : tight ? "tight" : "random";

  e.k_cols = rng.uniform_int(1, 4);
  e.k_rows = rng.uniform_int(1, 4);
  if (tight) {
    // Borders at every pixel: each +1 probe lands on its neighbour.
    e.width = e.k_cols;
    e.height = e.k_rows;
  } else {
    e.width = rng.uniform_int(std::max(2, e.k_cols), 12);
    e.height = rng.uniform_int(std::max(2, e.k_rows), 12);
  }
  e.channels = rng.uniform_int(1, 3);

  Image image(e.width, e.height, e.channels);
  // Dyadic level: every partial sum is exact, so the cell means are too.
  const double level = rng.uniform_int(-16, 16) / 16.0;
  for (double& v : image.data()) v = constant ? level : rng.uniform(-1.0, 1.0);

  PoolGrid grid = uniform_grid(e.width, e.height, e.k_cols, e.k_rows);
  if (!tight) {
    OffsetVector offsets = OffsetVector::zeros(grid);
    for (double& o : offsets.cols) o = rng.uniform(-0.5, 0.5) * e.width;
    for (double& o : offsets.rows) o = rng.uniform(-0.5, 0.5) * e.height;
    grid = apply_offsets(grid, offsets).grid;
  }

  PooledMap upstream(e.k_cols, e.k_rows, e.channels);
  for (double& v : upstream.data()) v = rng.uniform(-1.0, 1.0);

  constexpr int h = 1;
  const BorderGradient got = chain_border_gradients(image, grid, upstream, h);
  e.borders_exact = true;
  for (Axis axis : {Axis::Cols, Axis::Rows}) {
    for (int j = 1; j < grid.cells(axis); ++j) {
      const double expected = brute_force_border(image, grid, upstream, axis, j, h);
      const double value = got.axis(axis)[static_cast<std::size_t>(j - 1)];
      if (value != expected) e.borders_exact = false;
      if ((constant || tight) && value != 0.0) e.borders_exact = false;
    }
  }

  const PoolGrid pixels = discretize(grid);
  const Image analytic = input_gradient(pixels, upstream);
  Image probe = image;
  for (std::size_t n = 0; n < probe.size(); ++n) {
    const double saved = probe.data()[n];
    probe.data()[n] = saved + kInputGradStep;
    const double up = linear_loss(probe, pixels, upstream);
    probe.data()[n] = saved - kInputGradStep;
    const double down = linear_loss(probe, pixels, upstream);
    probe.data()[n] = saved;
    const double fd = (up - down) / (2.0 * kInputGradStep);
    e.input_max_error = std::max(e.input_max_error, std::abs(fd - analytic.data()[n]));
  }

  e.pass = e.borders_exact && e.input_max_error <= kInputGradTolerance;
  return e;
}

}  // namespace

int GradcheckReport::passed() const {
  return static_cast<int>(
      std::count_if(entries.begin(), entries.end(), [](const GradcheckEntry& e) { return e.pass; }));
}

GradcheckReport gradcheck(std::uint64_t seed, int instances) {
  Rng rng(mix_seed(seed, 0x67726164ULL));
  GradcheckReport report;
  report.entries.reserve(static_cast<std::size_t>(std::max(0, instances)));
  for (int n = 0; n < instances; ++n) report.entries.push_back(check_instance(rng, n));
  return report;
}

}  // namespace adaptive_pool
