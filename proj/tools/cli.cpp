#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "pfake/analysis.hpp"
#include "pfake/mask.hpp"
#include "pfake/media.hpp"
#include "pfake/parallel.hpp"
#include "pfake/pipeline.hpp"

namespace pfake::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateArgs {
  std::string input;
  std::string landmarks;
  std::string manifest;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t frames = 0;
  std::string config;
  unsigned jobs = 0;
};

struct AnalyzeArgs {
  std::string real;
  std::string candidate;
  std::string out;
  std::string mask;
  int columns = 8;
};

struct MaskArgs {
  std::string landmarks;
  std::string frame;
  std::string kind;
  std::string out;
  std::size_t index = 0;
};

// Flag > config file > PFAKE_CONFIG > defaults.
RpgConfig resolve_config(const std::string& flag_path) {
  std::string path = flag_path;
  if (path.empty()) {
    if (const char* env = std::getenv("PFAKE_CONFIG"); env && *env) path = env;
  }
  if (path.empty()) return {};
  return parse_config(read_text_file(path));
}

void print_effective(std::ostream& out, const RpgConfig& config, std::uint64_t seed, unsigned jobs) {
  nlohmann::json j;
  j["seed"] = seed;
  j["jobs"] = jobs;
  j["rpg"] = nlohmann::json::parse(describe_config(config));
  out << "effective configuration:\n" << j.dump(2) << "\n";
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (!a.seed) throw UsageError("--seed is required");
  if (a.manifest.empty() && (a.input.empty() || a.landmarks.empty())) {
    throw UsageError("either --manifest or both --input and --landmarks are required");
  }
  PipelineOptions options;
  options.rpg = resolve_config(a.config);
  options.jobs = resolve_jobs(a.jobs);
  print_effective(out, options.rpg, *a.seed, options.jobs);

  if (!a.manifest.empty()) {
    const auto manifest = read_manifest(a.manifest);
    const BatchReport report = generate_batch(manifest, *a.seed, a.out, options);
    fs::create_directories(a.out);
    const fs::path report_path = fs::path(a.out) / "report.json";
    write_text_file(report_path, report.to_json());
    out << "report: " << report_path.string() << "\n";
    for (const auto& id : report.succeeded) out << "trace: " << (fs::path(a.out) / id / kTraceFileName).string() << "\n";
    return report.failed.empty() ? kExitOk : kExitRuntime;
  }

  Clip clip = load_clip(a.input, a.landmarks);
  if (a.frames > 0 && a.frames < clip.length()) {
    std::vector<Frame> frames(clip.frames().begin(), clip.frames().begin() + a.frames);
    std::vector<Landmarks> rows(clip.landmarks().begin(), clip.landmarks().begin() + a.frames);
    clip = Clip(std::move(frames), std::move(rows), clip.source_id());
  }
  const GenerationResult result = generate_pfake(clip, *a.seed, options);
  save_clip(result.clip, a.out, result.trace, *a.seed);
  out << "trace: " << (fs::path(a.out) / kTraceFileName).string() << "\n";
  return kExitOk;
}

GrayImage residual_image(const FloatImage& residual) {
  GrayImage img(residual.height(), residual.width());
  for (std::size_t i = 0; i < residual.data().size(); ++i) img.data()[i] = round_to_byte(128.0 + 4.0 * residual.data()[i]);
  return img;
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto real = load_frames(a.real);
  const auto candidate = load_frames(a.candidate);
  std::optional<Mask> hint;
  if (!a.mask.empty()) hint = read_mask_png(a.mask);
  const RegularityComparison cmp = compare(real, candidate, hint ? &*hint : nullptr, a.columns);

  const fs::path report_path(a.out);
  if (report_path.has_parent_path()) fs::create_directories(report_path.parent_path());
  write_text_file(report_path, to_json(cmp, a.columns));

  const auto cols = sample_columns(real.front().width(), a.columns);
  const int mid = cols[cols.size() / 2];
  auto sibling = [&](const std::string& suffix) {
    fs::path p = report_path;
    return p.replace_filename(report_path.stem().string() + suffix);
  };
  write_png(temporal_slice(real, mid), sibling(".real_slice.png"));
  write_png(temporal_slice(candidate, mid), sibling(".candidate_slice.png"));
  write_png(residual_image(noise_residual(real.front())), sibling(".real_residual.png"));
  write_png(residual_image(noise_residual(candidate.front())), sibling(".candidate_residual.png"));

  out << "report: " << report_path.string() << "\n"
      << "temporal_slice_energy: real=" << cmp.real.temporal_slice_energy
      << " candidate=" << cmp.candidate.temporal_slice_energy << " delta=" << cmp.temporal_slice_energy_delta << "\n";
  return kExitOk;
}

int cmd_mask(const MaskArgs& a, std::ostream& out) {
  const auto kind = parse_mask_kind(a.kind);
  if (!kind) throw UsageError("unknown mask kind '" + a.kind + "'");
  const Frame frame = read_frame(a.frame);
  const auto rows = read_landmarks(a.landmarks);
  if (a.index >= rows.size()) {
    throw Error(ErrorCode::CountMismatch, "landmark row " + std::to_string(a.index) + " not present");
  }
  const Mask mask = build_mask(rows[a.index], *kind, frame.height(), frame.width());
  const fs::path path(a.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_mask_png(mask, path);
  out << "mask: " << path.string() << " (" << mask_area(mask) << " px)\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-fake clip generator and regularity diagnostics", "pfake"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a p-fake clip (or a batch with --manifest)");
  generate->add_option("--input", gen.input, "Directory of real frames");
  generate->add_option("--landmarks", gen.landmarks, "Landmark document (L x 68 x 2)");
  generate->add_option("--manifest", gen.manifest, "Batch manifest document");
  generate->add_option("--seed", gen.seed, "64-bit generation seed");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--frames", gen.frames, "Use only the first N frames");
  generate->add_option("--config", gen.config, "RPG range overrides (JSON); falls back to $PFAKE_CONFIG");
  generate->add_option("--jobs", gen.jobs, "Worker threads (0 = logical cores)");

  AnalyzeArgs ana;
  auto* analyze = app.add_subcommand("analyze", "Compare regularity statistics of two clips");
  analyze->add_option("--real", ana.real, "Directory of real frames")->required();
  analyze->add_option("--candidate", ana.candidate, "Directory of candidate frames")->required();
  analyze->add_option("--out", ana.out, "Report path (JSON)")->required();
  analyze->add_option("--columns", ana.columns, "Number of slice columns")->check(CLI::PositiveNumber);
  analyze->add_option("--mask", ana.mask, "Optional grayscale mask hint");

  MaskArgs msk;
  auto* mask = app.add_subcommand("mask", "Render one mask family for visual inspection");
  mask->add_option("--landmarks", msk.landmarks, "Landmark document")->required();
  mask->add_option("--frame", msk.frame, "Frame image (sets the size)")->required();
  mask->add_option("--kind", msk.kind, "whole-face | narrowed-face | face-with-forehead | face-boundary | "
                                       "mouth-region | facial-organs")->required();
  mask->add_option("--out", msk.out, "Output PNG")->required();
  mask->add_option("--index", msk.index, "Landmark row to use");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*analyze) return cmd_analyze(ana, out);
    if (*mask) return cmd_mask(msk, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace pfake::cli
