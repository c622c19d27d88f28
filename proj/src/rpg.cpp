#include "pfake/rpg.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "pfake/errors.hpp"

namespace pfake {

using nlohmann::json;

namespace {

constexpr std::uint64_t kSegmentTag = 0x5345474d454e5400ULL;
constexpr std::uint64_t kLengthTag = 0x4c454e4754480000ULL;

template <typename Enum, std::size_t N>
struct NameTable {
  std::array<std::pair<Enum, std::string_view>, N> entries;

  std::string_view name(Enum e) const {
    for (const auto& [value, text] : entries)
      if (value == e) return text;
    return "unknown";
  }
  std::optional<Enum> parse(std::string_view text) const {
    for (const auto& [value, name] : entries)
      if (name == text) return value;
    return std::nullopt;
  }
};

constexpr NameTable<MaskKind, 6> kMaskKinds{{{
    {MaskKind::WholeFace, "whole-face"},
    {MaskKind::NarrowedFace, "narrowed-face"},
    {MaskKind::FaceWithForehead, "face-with-forehead"},
    {MaskKind::FaceBoundary, "face-boundary"},
    {MaskKind::MouthRegion, "mouth-region"},
    {MaskKind::FacialOrgans, "facial-organs"},
}}};

constexpr NameTable<SoftenSide, 3> kSoftenSides{{{
    {SoftenSide::None, "none"},
    {SoftenSide::Foreground, "foreground"},
    {SoftenSide::Background, "background"},
}}};

constexpr NameTable<BlendMethod, 3> kBlendMethods{{{
    {BlendMethod::Alpha, "alpha"},
    {BlendMethod::ScaledAlpha, "scaled-alpha"},
    {BlendMethod::Hard, "hard"},
}}};

double draw(RandomStream& s, const Range& r) { return s.uniform(r.lo, r.hi); }

ElasticParams draw_elastic(RandomStream& s, const Range& sigma, const Range& alpha) {
  ElasticParams p;
  p.theta_sigma = draw(s, sigma);
  p.theta_alpha = draw(s, alpha);
  p.noise_seed = s.next_u64();
  return p;
}

void check_range(const Range& r, const char* name, double min_lo, double max_hi,
                 bool open_lo = false, bool open_hi = false) {
  const bool ok = std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi &&
                  (open_lo ? r.lo > min_lo : r.lo >= min_lo) &&
                  (open_hi ? r.hi < max_hi : r.hi <= max_hi);
  if (!ok) {
    fail(ErrorCode::InvalidArgument, std::string("invalid range for ") + name + ": [" +
                                         std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
}

// ---- JSON mapping -------------------------------------------------------

json elastic_to_json(const ElasticParams& p) {
  return {{"theta_sigma", p.theta_sigma}, {"theta_alpha", p.theta_alpha}, {"noise_seed", p.noise_seed}};
}

ElasticParams elastic_from_json(const json& j) {
  return {j.at("theta_sigma").get<double>(), j.at("theta_alpha").get<double>(),
          j.at("noise_seed").get<std::uint64_t>()};
}

json to_json(const ParamSet& p) {
  const auto& e = p.editor;
  json editor = {
      {"jitter",
       {{"theta_b", e.jitter.brightness}, {"theta_t", e.jitter.contrast}, {"theta_a", e.jitter.saturation}}},
      {"enabled",
       {{"iso_noise", e.enabled.iso_noise},
        {"sharpen", e.enabled.sharpen},
        {"downsample", e.enabled.downsample},
        {"elastic", e.enabled.elastic},
        {"dense_warp", e.enabled.dense_warp},
        {"tri_stretch", e.enabled.tri_stretch},
        {"freq_perturb", e.enabled.freq_perturb}}},
      {"iso_sigma", e.iso_sigma},
      {"iso_seed", e.iso_seed},
      {"sharpen_amount", e.sharpen_amount},
      {"down_scale", e.down_scale},
      {"elastic", elastic_to_json(e.elastic)},
      {"dense_warp_amp", e.dense_warp_amp},
      {"warp_seed", e.warp_seed},
      {"tri_jitter", e.tri_jitter},
      {"tri_seed", e.tri_seed},
      {"theta_f", e.theta_f},
      {"freq_seed", e.freq_seed},
  };
  json mask = {
      {"mask_kind", to_string(p.mask.kind)},
      {"deform", elastic_to_json(p.mask.deform)},
      {"theta_k", p.mask.theta_k},
      {"soften_side", to_string(p.mask.soften_side)},
  };
  json blend = {{"method", to_string(p.blend.method)}, {"alpha_scale", p.blend.alpha_scale}};
  return {{"segment_id", p.segment_id}, {"editor", editor}, {"mask", mask}, {"blend", blend}};
}

template <typename Enum>
Enum enum_from_json(const json& j, std::optional<Enum> (*parse)(std::string_view), const char* what) {
  const auto text = j.get<std::string>();
  auto v = parse(text);
  if (!v) throw Error(ErrorCode::ParseError, std::string("unknown ") + what + " '" + text + "'");
  return *v;
}

ParamSet param_set_from_json(const json& j) {
  ParamSet p;
  p.segment_id = j.at("segment_id").get<std::size_t>();
  const json& e = j.at("editor");
  const json& jit = e.at("jitter");
  p.editor.jitter = {jit.at("theta_b").get<double>(), jit.at("theta_t").get<double>(),
                     jit.at("theta_a").get<double>()};
  const json& en = e.at("enabled");
  p.editor.enabled.iso_noise = en.at("iso_noise").get<bool>();
  p.editor.enabled.sharpen = en.at("sharpen").get<bool>();
  p.editor.enabled.downsample = en.at("downsample").get<bool>();
  p.editor.enabled.elastic = en.at("elastic").get<bool>();
  p.editor.enabled.dense_warp = en.at("dense_warp").get<bool>();
  p.editor.enabled.tri_stretch = en.at("tri_stretch").get<bool>();
  p.editor.enabled.freq_perturb = en.at("freq_perturb").get<bool>();
  p.editor.iso_sigma = e.at("iso_sigma").get<double>();
  p.editor.iso_seed = e.at("iso_seed").get<std::uint64_t>();
  p.editor.sharpen_amount = e.at("sharpen_amount").get<double>();
  p.editor.down_scale = e.at("down_scale").get<double>();
  p.editor.elastic = elastic_from_json(e.at("elastic"));
  p.editor.dense_warp_amp = e.at("dense_warp_amp").get<double>();
  p.editor.warp_seed = e.at("warp_seed").get<std::uint64_t>();
  p.editor.tri_jitter = e.at("tri_jitter").get<double>();
  p.editor.tri_seed = e.at("tri_seed").get<std::uint64_t>();
  p.editor.theta_f = e.at("theta_f").get<double>();
  p.editor.freq_seed = e.at("freq_seed").get<std::uint64_t>();

  const json& m = j.at("mask");
  p.mask.kind = enum_from_json<MaskKind>(m.at("mask_kind"), parse_mask_kind, "mask kind");
  p.mask.deform = elastic_from_json(m.at("deform"));
  p.mask.theta_k = m.at("theta_k").get<int>();
  p.mask.soften_side = enum_from_json<SoftenSide>(m.at("soften_side"), parse_soften_side, "soften side");

  const json& b = j.at("blend");
  p.blend.method = enum_from_json<BlendMethod>(b.at("method"), parse_blend_method, "blend method");
  p.blend.alpha_scale = b.at("alpha_scale").get<double>();
  return p;
}

json range_to_json(const Range& r) { return json::array({r.lo, r.hi}); }

Range range_from_json(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::ParseError, "config key '" + key + "' must be a [lo, hi] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

struct RangeField {
  const char* key;
  Range RpgConfig::*member;
};

constexpr RangeField kRangeFields[] = {
    {"brightness", &RpgConfig::brightness},
    {"contrast", &RpgConfig::contrast},
    {"saturation", &RpgConfig::saturation},
    {"iso_sigma", &RpgConfig::iso_sigma},
    {"sharpen_amount", &RpgConfig::sharpen_amount},
    {"down_scale", &RpgConfig::down_scale},
    {"elastic_sigma", &RpgConfig::elastic_sigma},
    {"elastic_alpha", &RpgConfig::elastic_alpha},
    {"dense_warp_amp", &RpgConfig::dense_warp_amp},
    {"tri_jitter", &RpgConfig::tri_jitter},
    {"theta_f", &RpgConfig::theta_f},
    {"mask_sigma", &RpgConfig::mask_sigma},
    {"mask_alpha", &RpgConfig::mask_alpha},
    {"alpha_scale", &RpgConfig::alpha_scale},
};

}  // namespace

std::string_view to_string(MaskKind kind) { return kMaskKinds.name(kind); }
std::string_view to_string(SoftenSide side) { return kSoftenSides.name(side); }
std::string_view to_string(BlendMethod method) { return kBlendMethods.name(method); }
std::optional<MaskKind> parse_mask_kind(std::string_view name) { return kMaskKinds.parse(name); }
std::optional<SoftenSide> parse_soften_side(std::string_view name) { return kSoftenSides.parse(name); }
std::optional<BlendMethod> parse_blend_method(std::string_view name) {
  return kBlendMethods.parse(name);
}

bool is_face_group(MaskKind kind) noexcept {
  return kind == MaskKind::WholeFace || kind == MaskKind::NarrowedFace ||
         kind == MaskKind::FaceWithForehead;
}

ParamSet identity_params() {
  ParamSet p;
  p.mask.deform.theta_alpha = 0.0;
  p.mask.soften_side = SoftenSide::None;
  p.blend.method = BlendMethod::Alpha;
  return p;
}

void RpgConfig::validate() const {
  check_range(brightness, "brightness", 0.0, HUGE_VAL, true);
  check_range(contrast, "contrast", 0.0, HUGE_VAL, true);
  check_range(saturation, "saturation", 0.0, HUGE_VAL, true);
  check_range(iso_sigma, "iso_sigma", 0.0, HUGE_VAL);
  check_range(sharpen_amount, "sharpen_amount", 0.0, HUGE_VAL);
  check_range(down_scale, "down_scale", 0.0, 1.0, true, true);
  check_range(elastic_sigma, "elastic_sigma", 0.0, HUGE_VAL, true);
  check_range(elastic_alpha, "elastic_alpha", 0.0, HUGE_VAL);
  check_range(dense_warp_amp, "dense_warp_amp", 0.0, HUGE_VAL);
  check_range(tri_jitter, "tri_jitter", 0.0, HUGE_VAL);
  check_range(theta_f, "theta_f", 0.0, HUGE_VAL);
  check_range(mask_sigma, "mask_sigma", 0.0, HUGE_VAL, true);
  check_range(mask_alpha, "mask_alpha", 0.0, HUGE_VAL);
  check_range(alpha_scale, "alpha_scale", 0.0, 1.0);
  if (!(edit_probability >= 0.0 && edit_probability <= 1.0) ||
      !(face_group_probability >= 0.0 && face_group_probability <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "probabilities must lie in [0, 1]");
  }
  if (segment_min < 1 || segment_max < segment_min) {
    fail(ErrorCode::InvalidArgument, "segment lengths must satisfy 1 <= min <= max");
  }
}

RpgConfig parse_config(std::string_view document, RpgConfig base) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
  // Accept either a bare object or one nested under "rpg".
  const json& root = j.contains("rpg") ? j.at("rpg") : j;
  try {
    for (const auto& [key, value] : root.items()) {
      bool matched = false;
      for (const auto& field : kRangeFields) {
        if (key == field.key) {
          base.*field.member = range_from_json(value, key);
          matched = true;
        }
      }
      if (matched) continue;
      if (key == "edit_probability") {
        base.edit_probability = value.get<double>();
      } else if (key == "face_group_probability") {
        base.face_group_probability = value.get<double>();
      } else if (key == "segment_length") {
        const Range r = range_from_json(value, key);
        base.segment_min = static_cast<int>(r.lo);
        base.segment_max = static_cast<int>(r.hi);
      } else {
        throw Error(ErrorCode::ParseError, "unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
  base.validate();
  return base;
}

std::string describe_config(const RpgConfig& config) {
  json j;
  for (const auto& field : kRangeFields) j[field.key] = range_to_json(config.*field.member);
  j["edit_probability"] = config.edit_probability;
  j["face_group_probability"] = config.face_group_probability;
  j["segment_length"] = json::array({config.segment_min, config.segment_max});
  return j.dump(2);
}

RpgState::RpgState(std::uint64_t seed, RpgConfig config)
    : seed_(seed), config_(std::move(config)), lengths_(RandomStream(seed).fork(kLengthTag)) {
  config_.validate();
}

int RpgState::next_segment_length() {
  return static_cast<int>(lengths_.uniform_int(config_.segment_min, config_.segment_max));
}

ParamSet RpgState::next_segment_params() {
  const std::size_t id = next_segment_++;
  RandomStream stream = RandomStream(seed_).fork(kSegmentTag + id);
  ParamSet p = draw_param_set(stream, config_);
  p.segment_id = id;
  return p;
}

RpgState make_rpg(std::uint64_t seed, RpgConfig config) { return RpgState(seed, std::move(config)); }

ParamSet draw_param_set(RandomStream& s, const RpgConfig& c) {
  ParamSet p;
  EditorParams& e = p.editor;
  e.jitter.brightness = draw(s, c.brightness);
  e.jitter.contrast = draw(s, c.contrast);
  e.jitter.saturation = draw(s, c.saturation);
  e.enabled.iso_noise = s.bernoulli(c.edit_probability);
  e.enabled.sharpen = s.bernoulli(c.edit_probability);
  e.enabled.downsample = s.bernoulli(c.edit_probability);
  e.enabled.elastic = s.bernoulli(c.edit_probability);
  e.enabled.dense_warp = s.bernoulli(c.edit_probability);
  e.enabled.tri_stretch = s.bernoulli(c.edit_probability);
  e.enabled.freq_perturb = s.bernoulli(c.edit_probability);
  e.iso_sigma = draw(s, c.iso_sigma);
  e.iso_seed = s.next_u64();
  e.sharpen_amount = draw(s, c.sharpen_amount);
  e.down_scale = draw(s, c.down_scale);
  e.elastic = draw_elastic(s, c.elastic_sigma, c.elastic_alpha);
  e.dense_warp_amp = draw(s, c.dense_warp_amp);
  e.warp_seed = s.next_u64();
  e.tri_jitter = draw(s, c.tri_jitter);
  e.tri_seed = s.next_u64();
  e.theta_f = draw(s, c.theta_f);
  e.freq_seed = s.next_u64();

  MaskParams& m = p.mask;
  const bool face_group = s.bernoulli(c.face_group_probability);
  const auto within = s.uniform_int(0, 2);
  static constexpr MaskKind kFace[] = {MaskKind::WholeFace, MaskKind::NarrowedFace,
                                       MaskKind::FaceWithForehead};
  static constexpr MaskKind kPart[] = {MaskKind::FaceBoundary, MaskKind::MouthRegion,
                                       MaskKind::FacialOrgans};
  m.kind = face_group ? kFace[within] : kPart[within];
  m.deform = draw_elastic(s, c.mask_sigma, c.mask_alpha);
  m.theta_k = kMaskKernelSizes[s.uniform_int(0, 4)];
  m.soften_side = static_cast<SoftenSide>(s.uniform_int(0, 2));

  p.blend.method = static_cast<BlendMethod>(s.uniform_int(0, 2));
  p.blend.alpha_scale = draw(s, c.alpha_scale);
  return p;
}

std::vector<ParamSet> sample_clip_params(RpgState& rpg, std::size_t num_frames) {
  if (num_frames == 0) fail(ErrorCode::InvalidArgument, "num_frames must be at least 1");
  std::vector<ParamSet> out;
  out.reserve(num_frames);
  while (out.size() < num_frames) {
    const auto length = static_cast<std::size_t>(rpg.next_segment_length());
    const ParamSet p = rpg.next_segment_params();
    const std::size_t n = std::min(length, num_frames - out.size());
    out.insert(out.end(), n, p);
  }
  return out;
}

std::string serialize_trace(std::span<const ParamSet> params, std::optional<std::uint64_t> master_seed) {
  json j;
  j["schema"] = kTraceSchema;
  j["master_seed"] = master_seed ? json(*master_seed) : json(nullptr);
  j["params"] = json::array();
  for (const auto& p : params) j["params"].push_back(to_json(p));
  return j.dump(2);
}

Trace parse_trace_document(std::string_view document) {
  try {
    const json j = json::parse(document);
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "trace must be a JSON object");
    if (j.at("schema").get<std::string>() != kTraceSchema) {
      throw Error(ErrorCode::ParseError, "unsupported trace schema '" +
                                             j.at("schema").get<std::string>() + "'");
    }
    Trace trace;
    const json& seed = j.at("master_seed");
    if (!seed.is_null()) trace.master_seed = seed.get<std::uint64_t>();
    const json& params = j.at("params");
    if (!params.is_array()) throw Error(ErrorCode::ParseError, "'params' must be an array");
    trace.params.reserve(params.size());
    for (const auto& item : params) {
      ParamSet p = param_set_from_json(item);
      try {
        validate(p);
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, e.what());
      }
      trace.params.push_back(std::move(p));
    }
    return trace;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("trace: ") + e.what());
  }
}

std::vector<ParamSet> parse_trace(std::string_view document) {
  return parse_trace_document(document).params;
}

void validate(const ParamSet& p) {
  const auto& e = p.editor;
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::InvalidArgument, what);
  };
  require(e.jitter.brightness > 0 && e.jitter.contrast > 0 && e.jitter.saturation > 0,
          "jitter factors must be positive");
  require(e.iso_sigma >= 0, "iso_sigma must be >= 0");
  require(e.sharpen_amount >= 0, "sharpen_amount must be >= 0");
  require(e.down_scale > 0 && e.down_scale < 1, "down_scale must lie in (0, 1)");
  require(e.elastic.theta_sigma > 0 && e.elastic.theta_alpha >= 0, "invalid elastic parameters");
  require(e.dense_warp_amp >= 0, "dense_warp_amp must be >= 0");
  require(e.tri_jitter >= 0, "tri_jitter must be >= 0");
  require(e.theta_f >= 0, "theta_f must be >= 0");
  require(p.mask.deform.theta_sigma > 0 && p.mask.deform.theta_alpha >= 0,
          "invalid mask deformation parameters");
  require(std::find(std::begin(kMaskKernelSizes), std::end(kMaskKernelSizes), p.mask.theta_k) !=
              std::end(kMaskKernelSizes),
          "theta_k must be one of 3, 5, 7, 9, 11");
  require(p.blend.alpha_scale >= 0 && p.blend.alpha_scale <= 1, "alpha_scale must lie in [0, 1]");
}

}  // namespace pfake
