#include <bit>
#include <random>

#include <gtest/gtest.h>

#include "stereogt/census.hpp"
#include "stereogt/cost_volume.hpp"

using namespace stereogt;

namespace {

ImageF random_image(std::mt19937& rng, int w, int h) {
  std::uniform_real_distribution<float> u(0, 255);
  ImageF img(w, h);
  for (auto& v : img.pixels()) v = std::round(u(rng));
  return img;
}

CensusImage random_descriptors(std::mt19937_64& rng, int w, int h, int bits) {
  CensusImage img(w, h);
  const std::uint64_t mask = bits == 64 ? ~0ull : ((1ull << bits) - 1);
  for (auto& v : img.pixels()) v = rng() & mask;
  return img;
}

CostVolume random_volume(std::mt19937& rng, int w, int h, int d_max) {
  std::uniform_int_distribution<int> u(0, 62);
  CostVolume v(w, h, d_max);
  for (auto& c : v.data()) c = static_cast<float>(u(rng));
  return v;
}

}  // namespace

TEST(CostVolume, MatchesBruteForceHamming) {
  std::mt19937_64 rng(1);
  const int W = 23, H = 7, D = 9, bits = 62;
  const CensusImage ref = random_descriptors(rng, W, H, bits);
  const CensusImage tgt = random_descriptors(rng, W, H, bits);
  for (auto dir : {MatchDirection::left_reference, MatchDirection::right_reference}) {
    const CostVolume vol = build_cost_volume(ref, tgt, D, bits, dir);
    ASSERT_EQ(vol.disparities(), D + 1);
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        for (int d = 0; d <= D; ++d) {
          const int xt = dir == MatchDirection::left_reference ? x - d : x + d;
          int expected = bits;
          if (xt >= 0 && xt < W) {
            expected = 0;
            for (int b = 0; b < 64; ++b) expected += ((ref(x, y) >> b) & 1) != ((tgt(xt, y) >> b) & 1);
          }
          EXPECT_EQ(vol.at(x, y, d), static_cast<float>(expected));
        }
      }
    }
  }
}

TEST(CostVolume, IdenticalImagesHaveZeroCostAtZero) {
  std::mt19937 rng(2);
  const CensusImage c = census_transform(random_image(rng, 40, 20));
  const CostVolume vol = build_cost_volume(c, c, 10, 62);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 40; ++x) EXPECT_EQ(vol.at(x, y, 0), 0.0f);
}

TEST(CostVolume, ShiftBySevenIsRecovered) {
  std::mt19937 rng(3);
  const ImageF left = random_image(rng, 80, 30);
  ImageF right(80, 30);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 80; ++x) right(x, y) = left(std::min(x + 7, 79), y);
  const CostVolume vol = build_cost_volume(census_transform(left), census_transform(right), 16, 62);
  int unique = 0, n = 0;
  for (int y = 3; y < 27; ++y) {
    for (int x = 7 + 4; x < 80 - 4 - 7; ++x) {
      const auto c = vol.costs(x, y);
      // Local minima have all-zero descriptors and may tie elsewhere.
      EXPECT_EQ(c[7], 0.0f);
      unique += std::min_element(c.begin(), c.end()) - c.begin() == 7;
      ++n;
    }
  }
  EXPECT_GT(unique, 0.99 * n);
}

TEST(CostVolume, RangeAndShapeErrors) {
  const CensusImage a(10, 4), b(10, 4), c(9, 4);
  EXPECT_THROW(build_cost_volume(a, b, 10, 62), RangeError);
  EXPECT_THROW(build_cost_volume(a, c, 3, 62), ShapeError);
  EXPECT_NO_THROW(build_cost_volume(a, b, 9, 62));
}

TEST(AccumulateVolumes, SingleVolumeIsIdentity) {
  std::mt19937 rng(4);
  const CostVolume v = random_volume(rng, 6, 5, 4);
  const CostVolume m = accumulate_volumes(std::span(&v, 1));
  EXPECT_TRUE(std::equal(m.data().begin(), m.data().end(), v.data().begin()));
  EXPECT_EQ(m.frame_count(), 1);
}

TEST(AccumulateVolumes, MeanOfCAndThreeC) {
  std::mt19937 rng(5);
  const CostVolume a = random_volume(rng, 6, 5, 4);
  CostVolume b = a;
  for (auto& c : b.data()) c *= 3;
  const std::vector<CostVolume> vols{a, b};
  const CostVolume m = accumulate_volumes(vols);
  for (std::size_t i = 0; i < m.data().size(); ++i) EXPECT_EQ(m.data()[i], 2 * a.data()[i]);
  EXPECT_EQ(m.frame_count(), 2);
}

TEST(AccumulateVolumes, PermutationInvariantAndStreamingAgrees) {
  std::mt19937 rng(6);
  std::vector<CostVolume> vols;
  for (int i = 0; i < 7; ++i) vols.push_back(random_volume(rng, 9, 4, 5));
  const CostVolume m = accumulate_volumes(vols);
  std::vector<CostVolume> rev(vols.rbegin(), vols.rend());
  const CostVolume r = accumulate_volumes(rev);
  VolumeAccumulator acc;
  for (const auto& v : vols) acc.add(v);
  const CostVolume s = acc.mean();
  EXPECT_EQ(s.frame_count(), 7);
  for (std::size_t i = 0; i < m.data().size(); ++i) {
    double sum = 0;
    for (const auto& v : vols) sum += v.data()[i];
    EXPECT_EQ(m.data()[i], static_cast<float>(sum / 7));
    EXPECT_EQ(r.data()[i], m.data()[i]);
    EXPECT_EQ(s.data()[i], m.data()[i]);
  }
}

TEST(AccumulateVolumes, WeightsByFrameCount) {
  CostVolume a(2, 1, 1, 4.0f), b(2, 1, 1, 10.0f);
  a.set_frame_count(2);
  const std::vector<CostVolume> vols{a, b};
  const CostVolume m = accumulate_volumes(vols);
  EXPECT_EQ(m.frame_count(), 3);
  for (auto c : m.data()) EXPECT_FLOAT_EQ(c, 6.0f);
  // Averaging duplicates changes nothing.
  const std::vector<CostVolume> dup{a, a};
  const CostVolume d = accumulate_volumes(dup);
  for (auto c : d.data()) EXPECT_EQ(c, 4.0f);
}

TEST(AccumulateVolumes, Errors) {
  EXPECT_THROW(accumulate_volumes(std::span<const CostVolume>{}), ArgumentError);
  const std::vector<CostVolume> vols{CostVolume(3, 3, 2), CostVolume(3, 3, 1)};
  EXPECT_THROW(accumulate_volumes(vols), ShapeError);
  VolumeAccumulator acc;
  EXPECT_THROW((void)acc.mean(), ArgumentError);
  acc.add(vols[0]);
  EXPECT_THROW(acc.add(vols[1]), ShapeError);
}
