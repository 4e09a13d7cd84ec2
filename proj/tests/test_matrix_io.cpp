#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <gtest/gtest.h>

#include "numrad/errors.hpp"
#include "numrad/matrix_io.hpp"
#include "support.hpp"

using namespace numrad;

TEST(Parse, AllTokenForms) {
  const ComplexMatrix m = parse_matrix("2\n1 2i\n-3+4.5i 1e-3-2i\n");
  EXPECT_EQ(m(0, 0), Complex(1.0, 0.0));
  EXPECT_EQ(m(0, 1), Complex(0.0, 2.0));
  EXPECT_EQ(m(1, 0), Complex(-3.0, 4.5));
  EXPECT_EQ(m(1, 1), Complex(1e-3, -2.0));
}

TEST(Parse, CommentsAndBlankLines) {
  const ComplexMatrix m = parse_matrix("# header\n\n2 # order\n0 2\n\n0 0 # last\n");
  EXPECT_EQ(m, numrad::testing::nilpotent_two());
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse_matrix("2\n1 2\n3 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 3);
  }
  EXPECT_THROW(parse_matrix(""), ParseError);
  EXPECT_THROW(parse_matrix("2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_matrix("2\n1 2 3\n4 5\n"), ParseError);
  EXPECT_THROW(parse_matrix("0\n"), ParseError);
  EXPECT_THROW(parse_matrix("1\nnan\n"), ParseError);
  EXPECT_THROW(parse_matrix("1\n1\n2\n"), ParseError);
}

TEST(Render, EntryForms) {
  EXPECT_EQ(render_entry({1.5, 0.0}), "1.5");
  EXPECT_EQ(render_entry({0.0, 2.0}), "0+2i");
  EXPECT_EQ(render_entry({1.0, -0.25}), "1-0.25i");
  EXPECT_EQ(parse_matrix("1\n" + render_entry({1.0, -0.0}) + "\n")(0, 0).imag(), -0.0);
  EXPECT_TRUE(std::signbit(parse_matrix("1\n" + render_entry({1.0, -0.0}) + "\n")(0, 0).imag()));
}

TEST(Render, BitExactRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ComplexMatrix m = numrad::testing::random_matrix(1 + seed % 5, seed);
    m(0, 0) = Complex(std::numeric_limits<double>::denorm_min(), -1e300);
    EXPECT_EQ(parse_matrix(render_matrix(m)), m);
  }
}

TEST(File, RoundTripAndMissing) {
  const auto path = std::filesystem::temp_directory_path() / "numrad_io_test.txt";
  const ComplexMatrix m = numrad::testing::nonspanning_disk();
  write_matrix_file(path, m);
  EXPECT_EQ(read_matrix_file(path), m);
  std::filesystem::remove(path);
  try {
    read_matrix_file(path);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("numrad_io_test.txt"), std::string::npos);
  }
}
