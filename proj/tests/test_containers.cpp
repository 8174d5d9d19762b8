#include <gtest/gtest.h>

#include <cstring>

#include "ghostcs/containers.hpp"
#include "ghostcs/errors.hpp"
#include "ghostcs/phantoms.hpp"
#include "helpers.hpp"

using namespace ghostcs;

namespace {

MeasurementEnsemble small_ensemble() {
  SpeckleParams p;
  p.rows = 12;
  p.cols = 10;
  p.aperture_diameter = 8.0;
  p.seed = 77;
  return acquire(testing_support::random_image(12, 10, 1), p, 5, 0.01, 3);
}

}  // namespace

TEST(Gien, HeaderLayout) {
  const MeasurementEnsemble e = small_ensemble();
  const std::string bytes = encode_ensemble(e);
  ASSERT_EQ(bytes.size(), 4u + 2 + 4 * 3 + 8 + 8 + 8 * 5 + 4 * 5 * 120);
  EXPECT_EQ(bytes.substr(0, 4), "GIEN");
  EXPECT_EQ(bytes.substr(4, 2), std::string("\x01\x00", 2));
  EXPECT_EQ(bytes.substr(6, 4), std::string("\x0c\x00\x00\x00", 4));
  EXPECT_EQ(bytes.substr(10, 4), std::string("\x0a\x00\x00\x00", 4));
  EXPECT_EQ(bytes.substr(14, 4), std::string("\x05\x00\x00\x00", 4));
  EXPECT_EQ(bytes.substr(18, 8), std::string("\x4d\0\0\0\0\0\0\0", 8));
}

TEST(Gien, RoundTripIsExact) {
  const MeasurementEnsemble e = small_ensemble();
  const std::string bytes = encode_ensemble(e);
  const MeasurementEnsemble back = decode_ensemble(bytes);
  EXPECT_EQ(encode_ensemble(back), bytes);
  EXPECT_EQ(back.patterns, e.patterns);
  EXPECT_EQ(back.buckets, e.buckets);
  EXPECT_EQ(back.noise_sigma, e.noise_sigma);
  EXPECT_EQ(back.provenance.speckle.seed, 77u);
}

TEST(Gien, RejectsCorruption) {
  std::string bytes = encode_ensemble(small_ensemble());
  EXPECT_THROW(decode_ensemble(bytes.substr(0, bytes.size() - 1)), FormatError);
  EXPECT_THROW(decode_ensemble(bytes + "x"), FormatError);
  std::string magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(decode_ensemble(magic), FormatError);
  std::string version = bytes;
  version[4] = 9;
  EXPECT_THROW(decode_ensemble(version), UnsupportedFormatError);
  EXPECT_THROW(decode_ensemble("GI"), FormatError);
}

TEST(Gimg, RoundTripIsExact) {
  Image img = testing_support::random_image(7, 9, 3, -5.0, 5.0);
  img[4] = -0.0;
  img[5] = 1e-300;
  const std::string bytes = encode_raw_image(img);
  EXPECT_EQ(bytes.size(), 4u + 2 + 8 + 8 * 63);
  EXPECT_TRUE(is_raw_image(bytes));
  const Image back = decode_raw_image(bytes);
  EXPECT_EQ(encode_raw_image(back), bytes);
  for (std::size_t i = 0; i < img.size(); ++i) {
    EXPECT_EQ(std::memcmp(&back[i], &img[i], sizeof(double)), 0);
  }
}

TEST(Gimg, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "ghostcs_rt.gimg";
  const Image img = testing_support::random_image(4, 5, 8);
  write_raw_image(path, img);
  EXPECT_EQ(read_raw_image(path), img);
  std::filesystem::remove(path);
}

TEST(Gimg, RejectsOtherContent) {
  EXPECT_FALSE(is_raw_image("P5\n1 1\n255\n\0"));
  EXPECT_THROW(decode_raw_image("GIEN"), FormatError);
  std::string bytes = encode_raw_image(Image(2, 2, 1.0));
  EXPECT_THROW(decode_raw_image(bytes.substr(0, 20)), FormatError);
}
