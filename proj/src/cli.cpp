#include "adaptive_pool/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

#include "adaptive_pool/errors.hpp"
#include "adaptive_pool/gradcheck.hpp"
#include "adaptive_pool/image_io.hpp"
#include "adaptive_pool/importance.hpp"
#include "adaptive_pool/pool_ops.hpp"
#include "adaptive_pool/render.hpp"
#include "adaptive_pool/serialization.hpp"

namespace adaptive_pool {

namespace {

struct KOptions {
  int k = 0;
  int k_cols = 0;
  int k_rows = 0;
};

void add_k_options(CLI::App* cmd, KOptions& k, int default_k) {
  k.k = default_k;
  cmd->add_option("--k", k.k, "Cells per axis (square grid)")->check(CLI::PositiveNumber);
  cmd->add_option("--k-cols", k.k_cols, "Column cells (overrides --k)")->check(CLI::PositiveNumber);
  cmd->add_option("--k-rows", k.k_rows, "Row cells (overrides --k)")->check(CLI::PositiveNumber);
}

void resolve_k(const KOptions& k, int& cols, int& rows) {
  cols = k.k_cols > 0 ? k.k_cols : k.k;
  rows = k.k_rows > 0 ? k.k_rows : k.k;
}

Image maybe_upscale(const PooledMap& pooled, const PoolGrid& grid, bool upscale) {
  if (upscale) return expand_cells(pooled, grid);
  return Image(pooled.width(), pooled.height(), pooled.channels(),
               std::vector<double>(pooled.data().begin(), pooled.data().end()));
}

int cmd_pool(const CliConfig& cfg, std::ostream& out) {
  const Image image = load_image(cfg.input);
  const PoolGrid grid = discretize(uniform_grid(image.width(), image.height(), cfg.k_cols, cfg.k_rows));
  const PooledMap pooled = pool_forward(image, grid);
  save_image(maybe_upscale(pooled, grid, cfg.upscale), cfg.output);
  if (!cfg.grid_out.empty()) save_grid(grid, cfg.grid_out);
  out << "pooled " << image.width() << "x" << image.height() << " -> " << grid.cells_cols() << "x"
      << grid.cells_rows() << "\n";
  return kExitOk;
}

int cmd_compress(const CliConfig& cfg, std::ostream& out) {
  const Image image = load_image(cfg.input);
  const ImportanceMap map = cfg.rois.empty()
                                ? ImportanceMap::from_image(load_image(cfg.importance))
                                : build_map(load_roi_spec(cfg.rois), image.width(), image.height());
  const Compressed result = compress(image, map, cfg.k_cols, cfg.k_rows);
  save_image(maybe_upscale(result.pooled, result.grid, cfg.upscale), cfg.output);
  if (!cfg.grid_out.empty()) save_grid(result.grid, cfg.grid_out);
  out << "compressed " << image.width() << "x" << image.height() << " -> "
      << result.grid.cells_cols() << "x" << result.grid.cells_rows() << "\n";
  return kExitOk;
}

int cmd_grid_viz(const CliConfig& cfg, std::ostream& out) {
  const PoolGrid grid = load_grid(cfg.grid);
  save_image(render_grid(grid), cfg.output);
  out << "rendered " << grid.cells_cols() << "x" << grid.cells_rows() << " grid at "
      << grid.width() << "x" << grid.height() << "\n";
  return kExitOk;
}

int cmd_train_demo(const CliConfig& cfg, std::ostream& out) {
  const ToyTask task = ToyTask::make(cfg.seed, cfg.size, cfg.roi_size);
  TrainConfig train = cfg.train;
  train.seed = cfg.seed;
  const TrainingReport report = train_demo(task, train);
  if (!cfg.report.empty()) write_json_file(report_to_json(report), cfg.report);
  if (!cfg.grid_out.empty() && report.final_grid) save_grid(*report.final_grid, cfg.grid_out);
  out << "grid=" << grid_mode_name(report.grid_mode)
      << " lr=" << (report.dynamic_lr ? "dynamic" : "static") << " final_loss=" << report.final_loss
      << " final_lr=" << report.final_lr << " roi_cell_area=" << report.roi_cell_area
      << " background_cell_area=" << report.background_cell_area << "\n";
  return kExitOk;
}

int cmd_gradcheck(const CliConfig& cfg, std::ostream& out) {
  const GradcheckReport report = gradcheck(cfg.seed, cfg.instances);
  for (const GradcheckEntry& e : report.entries) {
    if (e.pass) continue;
    out << "instance " << e.instance << " (" << e.kind << ", " << e.width << "x" << e.height
        << "x" << e.channels << ", K=" << e.k_cols << "x" << e.k_rows
        << "): borders_exact=" << e.borders_exact << " input_max_error=" << e.input_max_error
        << "\n";
  }
  out << report.passed() << "/" << report.total() << " pass\n";
  return report.ok() ? kExitOk : kExitFailure;
}

}  // namespace

std::optional<CliConfig> parse_cli(const std::vector<std::string>& args, std::ostream& out,
                                   std::ostream& err, int& exit_code) {
  CliConfig cfg;
  CLI::App app{"Learnable non-uniform pooling toolkit", "adaptive_pool"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "Seed for every random stream");

  KOptions pool_k;
  KOptions compress_k;
  auto* pool = app.add_subcommand("pool", "Uniform average pooling to K x K");
  pool->add_option("--input", cfg.input, "Input image (.pgm/.ppm/.png)")->required();
  pool->add_option("--output", cfg.output, "Output image")->required();
  pool->add_option("--grid-out", cfg.grid_out, "Write the grid as JSON");
  pool->add_flag("--upscale", cfg.upscale, "Expand the output back to source resolution");
  add_k_options(pool, pool_k, 30);

  auto* comp = app.add_subcommand("compress", "Importance-weighted pooling to K x K");
  comp->add_option("--input", cfg.input, "Input image")->required();
  auto* rois = comp->add_option("--rois", cfg.rois, "ROI spec JSON");
  auto* imp = comp->add_option("--importance", cfg.importance, "8-bit grayscale importance map");
  rois->excludes(imp);
  comp->add_option("--output", cfg.output, "Output image")->required();
  comp->add_option("--grid-out", cfg.grid_out, "Write the grid as JSON");
  comp->add_flag("--upscale", cfg.upscale, "Expand the output back to source resolution");
  add_k_options(comp, compress_k, 30);

  auto* viz = app.add_subcommand("grid-viz", "Render a grid's cell sizes (small cells white)");
  viz->add_option("--grid", cfg.grid, "Grid JSON")->required();
  viz->add_option("--output", cfg.output, "Output image")->required();

  std::string grid_mode = "learned";
  auto* train = app.add_subcommand("train-demo", "Train the toy ROI regression task");
  train->add_option("--iters", cfg.train.iters, "Iterations")->check(CLI::PositiveNumber);
  train->add_option("--k", cfg.train.k, "Cells per axis")->check(CLI::PositiveNumber);
  train->add_option("--lr", cfg.train.base_lr, "Initial offset-head learning rate");
  train->add_flag("--static-lr", "Keep the offset-head rate fixed");
  train->add_option("--batch", cfg.train.batch, "Batch size")->check(CLI::PositiveNumber);
  train->add_option("--readout-lr", cfg.train.readout_lr, "Readout learning rate");
  train->add_option("--eval-samples", cfg.train.eval_samples, "Held-out samples")
      ->check(CLI::PositiveNumber);
  train->add_option("--grid-mode", grid_mode, "learned | uniform | importance")
      ->check(CLI::IsMember({"learned", "uniform", "importance"}));
  train->add_option("--size", cfg.size, "Image size")->check(CLI::PositiveNumber);
  train->add_option("--roi-size", cfg.roi_size, "ROI side")->check(CLI::PositiveNumber);
  train->add_option("--report", cfg.report, "Write the training report JSON");
  train->add_option("--grid-out", cfg.grid_out, "Write the final grid JSON");

  auto* gc = app.add_subcommand("gradcheck", "Check gradients against brute force");
  gc->add_option("--instances", cfg.instances, "Random instances")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    exit_code = kExitOk;
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    exit_code = kExitOk;
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    exit_code = kExitUsage;
    return std::nullopt;
  }

  if (pool->parsed()) {
    cfg.subcommand = "pool";
    resolve_k(pool_k, cfg.k_cols, cfg.k_rows);
  } else if (comp->parsed()) {
    cfg.subcommand = "compress";
    resolve_k(compress_k, cfg.k_cols, cfg.k_rows);
    if (cfg.rois.empty() && cfg.importance.empty()) {
      err << "error: compress needs --rois or --importance\n" << comp->help();
      exit_code = kExitUsage;
      return std::nullopt;
    }
  } else if (viz->parsed()) {
    cfg.subcommand = "grid-viz";
  } else if (train->parsed()) {
    cfg.subcommand = "train-demo";
    cfg.train.dynamic_lr = train->count("--static-lr") == 0;
    cfg.train.grid_mode = *parse_grid_mode(grid_mode);
  } else {
    cfg.subcommand = "gradcheck";
  }
  exit_code = kExitOk;
  return cfg;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  const auto cfg = parse_cli(args, out, err, code);
  if (!cfg) return code;
  try {
    if (cfg->subcommand == "pool") return cmd_pool(*cfg, out);
    if (cfg->subcommand == "compress") return cmd_compress(*cfg, out);
    if (cfg->subcommand == "grid-viz") return cmd_grid_viz(*cfg, out);
    if (cfg->subcommand == "train-demo") return cmd_train_demo(*cfg, out);
    return cmd_gradcheck(*cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace adaptive_pool
