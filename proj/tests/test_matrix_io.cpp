#include "gdrazin/instance_gen.hpp"
#include "gdrazin/matrix_io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using gdrazin::GMatrix;

TEST(MatrixIo, CanonicalText) {
  const GMatrix m{{1, gdrazin::GaussianRational(mpq_class(-1, 2), 3)}, {0, gdrazin::GaussianRational(0, 1)}};
  EXPECT_EQ(gdrazin::format_matrix(m), R"({"rows":2,"cols":2,"data":[["1","-1/2+3i"],["0","0+1i"]]})");
}

TEST(MatrixIo, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GMatrix a = gdrazin::gen_drazin_matrix({.n = 1 + seed % 6, .r = 0, .seed = seed, .complex_entries = true}).a;
    const GMatrix d = gdrazin::drazin(a).ad;
    EXPECT_EQ(gdrazin::parse_matrix(gdrazin::format_matrix(a)), a);
    EXPECT_EQ(gdrazin::parse_matrix(gdrazin::format_matrix(d)), d);
  }
}

TEST(MatrixIo, AcceptsIntegersAndWhitespace) {
  EXPECT_EQ(gdrazin::parse_matrix(R"( { "data": [[1, "2/4"]], "cols": 2, "rows": 1 } )"),
            GMatrix({{1, gdrazin::GaussianRational(mpq_class(1, 2))}}));
}

TEST(MatrixIo, RejectsMalformed) {
  for (const char *bad : {
           "not json",
           "[]",
           R"({"rows":1,"cols":1})",
           R"({"rows":2,"cols":1,"data":[["1"]]})",
           R"({"rows":1,"cols":2,"data":[["1"]]})",
           R"({"rows":1,"cols":1,"data":[["x"]]})",
           R"({"rows":1,"cols":1,"data":[[1.5]]})",
           R"({"rows":0,"cols":0,"data":[]})",
           R"({"rows":-1,"cols":1,"data":[["1"]]})",
       })
    EXPECT_THROW(gdrazin::parse_matrix(bad), gdrazin::ParseError) << bad;
}

TEST(MatrixIo, SizeCap) {
  const std::string big = gdrazin::format_matrix(GMatrix::identity(5));
  EXPECT_THROW(gdrazin::parse_matrix(big, 4), gdrazin::ParseError);
  EXPECT_NO_THROW(gdrazin::parse_matrix(big, 5));
  ::setenv("DRAZIN_MAX_N", "3", 1);
  EXPECT_EQ(gdrazin::max_dimension(), 3u);
  EXPECT_THROW(gdrazin::parse_matrix(big), gdrazin::ParseError);
  ::setenv("DRAZIN_MAX_N", "zero", 1);
  EXPECT_THROW(gdrazin::max_dimension(), gdrazin::ParseError);
  ::unsetenv("DRAZIN_MAX_N");
  EXPECT_EQ(gdrazin::max_dimension(), 16u);
}

TEST(MatrixIo, MissingFileNamesPath) {
  try {
    gdrazin::read_matrix_file("/nonexistent/m.json");
    FAIL() << "expected ParseError";
  } catch (const gdrazin::ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/m.json"), std::string::npos);
  }
}
