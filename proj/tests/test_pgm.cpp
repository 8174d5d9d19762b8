#include <gtest/gtest.h>

#include <filesystem>

#include "ghostcs/errors.hpp"
#include "ghostcs/pgm.hpp"
#include "helpers.hpp"

using namespace ghostcs;

TEST(Pgm, ParsesAsciiWithComments) {
  const PgmData d = parse_pgm("P2\n# comment\n3 2 # dims\n255\n0 1 2\n253 254 255\n");
  EXPECT_EQ(d.rows, 2u);
  EXPECT_EQ(d.cols, 3u);
  EXPECT_EQ(d.maxval, 255u);
  EXPECT_EQ(d.levels, (std::vector<std::uint16_t>{0, 1, 2, 253, 254, 255}));
}

TEST(Pgm, AsciiAndBinaryLoadIdentically) {
  for (unsigned maxval : {255u, 65535u}) {
    const PgmData d = quantize(testing_support::random_image(9, 7, maxval), maxval);
    const PgmData a = parse_pgm(encode_pgm(d, PgmEncoding::Ascii));
    const PgmData b = parse_pgm(encode_pgm(d, PgmEncoding::Binary));
    EXPECT_EQ(a.levels, b.levels);
    EXPECT_EQ(to_image(a), to_image(b));
    EXPECT_EQ(a.levels, d.levels);
  }
}

TEST(Pgm, SixteenBitIsBigEndian) {
  PgmData d{1, 2, 65535, {0x0102, 0xA0B0}};
  const std::string bytes = encode_pgm(d, PgmEncoding::Binary);
  const std::string tail = bytes.substr(bytes.size() - 4);
  EXPECT_EQ(tail, std::string("\x01\x02\xA0\xB0", 4));
}

TEST(Pgm, SaveRoundTripWithinQuantization) {
  const auto dir = std::filesystem::temp_directory_path() / "ghostcs_pgm_rt";
  std::filesystem::create_directories(dir);
  const Image img = testing_support::random_image(13, 11, 4);
  for (unsigned maxval : {255u, 65535u}) {
    for (auto enc : {PgmEncoding::Ascii, PgmEncoding::Binary}) {
      save_pgm(dir / "x.pgm", img, enc, maxval);
      const Image back = to_image(read_pgm(dir / "x.pgm"));
      EXPECT_LE(testing_support::max_abs_diff(back.values(), img.values()),
                1.0 / (2.0 * maxval) + 1e-15);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(Pgm, MalformedInputs) {
  EXPECT_THROW(parse_pgm(""), FormatError);
  EXPECT_THROW(parse_pgm("P2\n2 2\n255\n1 2 3\n"), FormatError);          // truncated
  EXPECT_THROW(parse_pgm("P2\n2 1\n255\n1 256\n"), FormatError);          // level above maxval
  EXPECT_THROW(parse_pgm("P5\n2 2\n255\n\x01\x02"), FormatError);        // short raster
  EXPECT_THROW(parse_pgm("P2\n0 2\n255\n"), FormatError);                 // empty grid
}

TEST(Pgm, UnsupportedVariants) {
  EXPECT_THROW(parse_pgm("P3\n1 1\n255\n0 0 0\n"), UnsupportedFormatError);
  EXPECT_THROW(parse_pgm("P2\n1 1\n70000\n0\n"), UnsupportedFormatError);
  EXPECT_THROW(parse_pgm("P2\n1 1\n0\n0\n"), UnsupportedFormatError);
}

TEST(Pgm, MissingFileIsIoError) {
  EXPECT_THROW(read_pgm("/nonexistent/dir/x.pgm"), IoError);
  EXPECT_THROW(write_file_bytes("/nonexistent/dir/x.pgm", "x"), IoError);
}

TEST(Pgm, QuantizeClamps) {
  const PgmData d = quantize(Image(1, 3, std::vector<double>{-0.5, 0.5, 1.5}), 255);
  EXPECT_EQ(d.levels, (std::vector<std::uint16_t>{0, 128, 255}));
}
