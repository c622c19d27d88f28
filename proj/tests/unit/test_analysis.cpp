#include <gtest/gtest.h>

#include <json.hpp>

#include "pfake/analysis.hpp"
#include "pfake/filters.hpp"
#include "pfake/media.hpp"
#include "pfake/pipeline.hpp"
#include "support/fixtures.hpp"

namespace pfake {
namespace {

using testing::constant_frame;
using testing::random_frame;

Frame shifted(const Frame& f, int k) {
  Frame out = f;
  for (auto& v : out.data()) v = static_cast<std::uint8_t>(v + k);
  return out;
}

double signed_mean(const FloatImage& img) {
  double s = 0;
  for (double v : img.data()) s += v;
  return s / static_cast<double>(img.pixel_count());
}

TEST(NoiseResidual, ConstantFrameIsZero) {
  for (double v : noise_residual(constant_frame(20, 20, 30, 140, 250)).data()) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(NoiseResidual, MeanNearZero) {
  EXPECT_LT(std::abs(signed_mean(noise_residual(random_frame(64, 64, 1)))), 0.5);
  EXPECT_LT(std::abs(signed_mean(noise_residual(testing::synthetic_face_frame(128, 128, 0)))), 0.5);
}

TEST(NoiseResidual, NoiseHasLargerSpreadThanBlurred) {
  const Frame noise = random_frame(64, 64, 2);
  const Frame blurred = gaussian_blur_ksize(noise, 9);
  const Frame one_noise[] = {noise}, one_blurred[] = {blurred};
  EXPECT_GT(analyze(one_noise).residual.stddev, analyze(one_blurred).residual.stddev);
}

TEST(TemporalSlice, SingleFrameIsThatColumn) {
  const Frame f = random_frame(10, 6, 3);
  const Frame one[] = {f};
  const GrayImage s = temporal_slice(one, 4);
  const GrayImage g = rgb_to_gray(f);
  ASSERT_EQ(s.height(), 10);
  ASSERT_EQ(s.width(), 1);
  for (int y = 0; y < 10; ++y) EXPECT_EQ(s(y, 0), g(y, 4));
}

TEST(TemporalSlice, StaticClipHasZeroEnergy) {
  const std::vector<Frame> frames(6, random_frame(12, 12, 4));
  const GrayImage s = temporal_slice(frames, 5);
  for (int t = 1; t < 6; ++t)
    for (int y = 0; y < 12; ++y) EXPECT_EQ(s(y, t), s(y, 0));
  EXPECT_EQ(slice_energy(s), 0.0);
  EXPECT_EQ(analyze(frames).temporal_slice_energy, 0.0);
}

TEST(TemporalSlice, AlternatingFramesAreMaximal) {
  std::vector<Frame> frames;
  for (int t = 0; t < 8; ++t) frames.push_back(t % 2 ? constant_frame(8, 8, 255, 255, 255) : Frame(8, 8));
  EXPECT_DOUBLE_EQ(slice_energy(temporal_slice(frames, 3)), 255.0);
  const auto r = analyze(frames);
  EXPECT_DOUBLE_EQ(r.temporal_slice_energy, 255.0);
  for (double d : r.per_frame_delta) EXPECT_DOUBLE_EQ(d, 255.0);
}

TEST(TemporalSlice, ColumnOutOfRange) {
  const Frame one[] = {Frame(4, 4)};
  for (int c : {-1, 4}) {
    try {
      temporal_slice(one, c);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ColumnOutOfRange);
    }
  }
}

TEST(SampleColumns, EvenlySpaced) {
  EXPECT_EQ(sample_columns(299, 8), (std::vector<int>{18, 56, 93, 130, 168, 205, 242, 280}));
  EXPECT_EQ(sample_columns(3, 8), (std::vector<int>{0, 1, 2}));
}

TEST(Analyze, ReportShapesAndNonNegative) {
  const Clip clip = testing::synthetic_face_clip(5, 64);
  Mask hint(64, 64, 0.0);
  for (int y = 20; y < 40; ++y)
    for (int x = 20; x < 40; ++x) hint(y, x) = 1.0;
  const auto r = analyze(clip.frames(), &hint);
  EXPECT_EQ(r.per_frame_delta.size(), 4u);
  EXPECT_EQ(r.per_frame_delta_masked.size(), 4u);
  ASSERT_TRUE(r.residual_inside.has_value());
  ASSERT_TRUE(r.residual_outside.has_value());
  for (const auto& s : {r.residual, *r.residual_inside, *r.residual_outside}) {
    EXPECT_GE(s.mean_abs, 0.0);
    EXPECT_GE(s.stddev, 0.0);
    EXPECT_GE(s.hf_energy, 0.0);
  }
  for (double d : r.per_frame_delta) EXPECT_GT(d, 0.0);
  EXPECT_GT(r.temporal_slice_energy, 0.0);
}

TEST(Analyze, TranslationConsistent) {
  const Clip clip = testing::synthetic_face_clip(4, 64);
  std::vector<Frame> up;
  for (const auto& f : clip.frames()) up.push_back(shifted(f, 20));  // fixture stays below 235
  const auto a = analyze(clip.frames());
  const auto b = analyze(up);
  EXPECT_NEAR(a.residual.stddev, b.residual.stddev, 1e-9);
  EXPECT_NEAR(a.residual.mean_abs, b.residual.mean_abs, 1e-9);
  EXPECT_NEAR(a.residual.hf_energy, b.residual.hf_energy, 1e-9);
  EXPECT_DOUBLE_EQ(a.temporal_slice_energy, b.temporal_slice_energy);
  EXPECT_EQ(a.per_frame_delta, b.per_frame_delta);
}

TEST(Compare, SelfComparisonHasZeroDeltas) {
  const Clip clip = testing::synthetic_face_clip(4, 48);
  Mask hint(48, 48, 1.0);
  const auto c = compare(clip.frames(), clip.frames(), &hint);
  EXPECT_EQ(c.residual_delta, ResidualStats{});
  EXPECT_EQ(*c.residual_inside_delta, ResidualStats{});
  EXPECT_EQ(c.temporal_slice_energy_delta, 0.0);
  for (double d : c.per_frame_delta_delta) EXPECT_EQ(d, 0.0);
  for (double d : c.per_frame_delta_masked_delta) EXPECT_EQ(d, 0.0);
}

TEST(Compare, SwappingNegatesDeltas) {
  const Clip clip = testing::synthetic_face_clip(6, 64);
  const auto fake = generate_pfake(clip, 21).clip;
  const auto ab = compare(clip.frames(), fake.frames());
  const auto ba = compare(fake.frames(), clip.frames());
  EXPECT_DOUBLE_EQ(ab.temporal_slice_energy_delta, -ba.temporal_slice_energy_delta);
  EXPECT_DOUBLE_EQ(ab.residual_delta.stddev, -ba.residual_delta.stddev);
  for (std::size_t i = 0; i < ab.per_frame_delta_delta.size(); ++i)
    EXPECT_DOUBLE_EQ(ab.per_frame_delta_delta[i], -ba.per_frame_delta_delta[i]);
}

TEST(Compare, PfakeRaisesSliceEnergy) {
  const Clip clip = testing::synthetic_face_clip(32, 128);
  const auto fake = generate_pfake(clip, 4).clip;
  EXPECT_GT(compare(clip.frames(), fake.frames()).temporal_slice_energy_delta, 0.0);
}

TEST(Compare, RejectsMismatchedClips) {
  const std::vector<Frame> a(3, Frame(8, 8)), b(2, Frame(8, 8)), c(3, Frame(8, 9));
  for (const auto* other : {&b, &c}) {
    try {
      compare(a, *other);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
  }
}

TEST(Compare, JsonDocument) {
  const Clip clip = testing::synthetic_face_clip(3, 40);
  const auto j = nlohmann::json::parse(to_json(compare(clip.frames(), clip.frames())));
  EXPECT_EQ(j.at("schema"), kReportSchema);
  EXPECT_TRUE(j.at("real").contains("temporal_slice_energy"));
  EXPECT_TRUE(j.at("candidate").contains("per_frame_delta"));
  EXPECT_TRUE(j.contains("delta"));
}

}  // namespace
}  // namespace pfake
