#include "gdrazin/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using gdrazin::GMatrix;
using json = nlohmann::json;

namespace {

const fs::path fixtures = GDRAZIN_FIXTURE_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gdrazin::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const char *name) { return (fixtures / name).string(); }

class TempDir {
public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("gdrazin-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  [[nodiscard]] const fs::path &path() const { return path_; }
  [[nodiscard]] std::string file(const std::string &name, const std::string &text) const {
    gdrazin::write_text_file(path_ / name, text);
    return (path_ / name).string();
  }

private:
  fs::path path_;
};

} // namespace

TEST(Cli, DrazinOfNilpotentFixture) {
  const auto r = run({"drazin", fx("example21_a.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(gdrazin::matrix_from_json(j["ad"]), GMatrix(3, 3));
  EXPECT_EQ(j["index"], 2);
  EXPECT_EQ(gdrazin::matrix_from_json(j["api"]), GMatrix::identity(3));
}

TEST(Cli, DrazinOfIdentity) {
  const auto r = run({"drazin", fx("identity3.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(gdrazin::matrix_from_json(json::parse(r.out)["ad"]), GMatrix::identity(3));
}

TEST(Cli, DrazinOutputRoundTrips) {
  TempDir tmp;
  const GMatrix a = gdrazin::gen_drazin_matrix({.n = 5, .r = 2, .seed = 3, .complex_entries = true}).a;
  const auto r = run({"drazin", tmp.file("a.json", gdrazin::format_matrix(a))});
  ASSERT_EQ(r.code, 0);
  const GMatrix ad = gdrazin::matrix_from_json(json::parse(r.out)["ad"]);
  EXPECT_TRUE(gdrazin::verify_drazin(a, ad));
  EXPECT_EQ(run({"drazin", tmp.file("a.json", gdrazin::format_matrix(a))}).out, r.out);
}

TEST(Cli, DrazinInputErrors) {
  TempDir tmp;
  EXPECT_EQ(run({"drazin", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"drazin", tmp.file("bad.json", "{")}).code, 2);
  const auto r = run({"drazin", tmp.file("rect.json", R"({"rows":1,"cols":2,"data":[["1","2"]]})")});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, CheckSingleCondition) {
  auto r = run({"check", fx("example21_a.json"), fx("example21_b.json"), "--condition", "LIU"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["LIU"], true);
  r = run({"check", fx("example21_a.json"), fx("example21_b.json"), "--condition", "THM21"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["THM21"], false);
}

TEST(Cli, CheckAll) {
  TempDir tmp;
  const std::string zero = tmp.file("z.json", gdrazin::format_matrix(GMatrix(3, 3)));
  auto r = run({"check", fx("example21_a.json"), zero, "--all"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.size(), gdrazin::all_conditions.size());
  for (const auto &[k, v] : j.items()) EXPECT_TRUE(v.get<bool>()) << k;
  r = run({"check", fx("example21_a.json"), fx("example21_b.json"), "--all"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out).size(), gdrazin::all_conditions.size());
}

TEST(Cli, CheckUsageErrors) {
  EXPECT_EQ(run({"check", fx("example21_a.json"), fx("example21_b.json")}).code, 2);
  EXPECT_EQ(run({"check", fx("example21_a.json"), fx("example21_b.json"), "--condition", "NOPE"}).code, 2);
  EXPECT_EQ(run({"check", fx("example21_a.json"), fx("identity3.json"), "--condition", "LIU", "--all"}).code, 2);
}

TEST(Cli, SumWithVerify) {
  const auto r = run({"sum", fx("example22_a.json"), fx("example22_b.json"), "--method", "THM21", "--verify"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["match"], true);
  EXPECT_EQ(gdrazin::matrix_from_json(j["result"]), GMatrix(3, 3));
}

TEST(Cli, SumPlain) {
  TempDir tmp;
  const GMatrix a{{1, 1, 0}, {0, 0, 1}, {0, 0, 0}};
  const auto r = run({"sum", tmp.file("a.json", gdrazin::format_matrix(a)),
                      tmp.file("z.json", gdrazin::format_matrix(GMatrix(3, 3))), "--method", "THM23"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(gdrazin::parse_matrix(r.out), gdrazin::drazin(a).ad);
}

TEST(Cli, SumOnGeneratedThm22Pair) {
  TempDir tmp;
  const auto g = run({"generate", "--family", "THM22", "-n", "5", "-r", "2", "--seed", "8", "-o", tmp.path().string()});
  ASSERT_EQ(g.code, 0) << g.err;
  const auto r = run({"sum", (tmp.path() / "a.json").string(), (tmp.path() / "b.json").string(), "--method",
                      "THM22", "--verify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["match"], true);
}

TEST(Cli, SumExitCodes) {
  const auto violated = run({"sum", fx("example21_a.json"), fx("example21_b.json"), "--method", "THM21"});
  EXPECT_EQ(violated.code, 1);
  EXPECT_NE(violated.err.find("hypothesis"), std::string::npos);
  EXPECT_EQ(run({"sum", fx("example21_a.json"), fx("example21_b.json"), "--method", "LIU"}).code, 2);
  EXPECT_EQ(run({"sum", fx("example21_a.json"), fx("example21_b.json")}).code, 2);
}

TEST(Cli, GenerateWritesCertifiedFiles) {
  TempDir tmp;
  const auto r = run({"generate", "--family", "THM21", "-n", "6", "-r", "3", "--seed", "42", "-o", tmp.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto cert = json::parse(gdrazin::read_text_file(tmp.path() / "certificate.json"));
  EXPECT_EQ(cert["condition_holds"], true);
  EXPECT_EQ(cert["family"], "THM21");
  EXPECT_EQ(cert["seed"], 42);
  const GMatrix a = gdrazin::read_matrix_file(tmp.path() / "a.json");
  const GMatrix b = gdrazin::read_matrix_file(tmp.path() / "b.json");
  EXPECT_EQ(gdrazin::matrix_from_json(cert["oracle"]), gdrazin::drazin(GMatrix(a + b)).ad);
}

TEST(Cli, GenerateIsByteDeterministic) {
  TempDir x, y;
  for (const auto *dir : {&x, &y})
    ASSERT_EQ(run({"generate", "--family", "COR27", "-n", "5", "-r", "2", "--seed", "7", "-o", dir->path().string()}).code, 0);
  for (const char *f : {"a.json", "b.json", "certificate.json"})
    EXPECT_EQ(gdrazin::read_text_file(x.path() / f), gdrazin::read_text_file(y.path() / f)) << f;
}

TEST(Cli, GenerateNilpotentFamily) {
  TempDir tmp;
  ASSERT_EQ(run({"generate", "--family", "COR22", "-n", "4", "-r", "0", "--seed", "1", "-o", tmp.path().string()}).code, 0);
  const GMatrix a = gdrazin::read_matrix_file(tmp.path() / "a.json");
  EXPECT_TRUE(gdrazin::is_nilpotent(a));
  EXPECT_LE(gdrazin::drazin_index(a), 4u);
}

TEST(Cli, GenerateFailures) {
  TempDir tmp;
  EXPECT_EQ(run({"generate", "--family", "COR22", "-n", "4", "-r", "2", "--seed", "1", "-o", tmp.path().string()}).code, 1);
  EXPECT_EQ(run({"generate", "--family", "LIU", "-n", "4", "-r", "2", "--seed", "1", "-o", tmp.path().string()}).code, 1);
  EXPECT_EQ(run({"generate", "--family", "BOGUS", "-n", "4", "-r", "2", "--seed", "1", "-o", tmp.path().string()}).code, 2);
  EXPECT_EQ(run({"generate", "--family", "THM21", "-n", "4", "-r", "2", "-o", tmp.path().string()}).code, 2);
}

TEST(Cli, SelftestFilter) {
  const auto r = run({"selftest", "--filter", "examples"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("[1]"), std::string::npos);
  EXPECT_NE(r.out.find("[2]"), std::string::npos);
  EXPECT_EQ(r.out.find("[3]"), std::string::npos);
  EXPECT_EQ(run({"selftest", "--filter", "nothing-matches"}).code, 2);
}

TEST(Cli, SelftestCorruptedFixture) {
  TempDir tmp;
  fs::copy(fixtures, tmp.path(), fs::copy_options::recursive);
  gdrazin::write_text_file(tmp.path() / "example21_a.json", "{\"rows\":3");
  EXPECT_EQ(run({"selftest", "--filter", "examples", "--fixtures", tmp.path().string()}).code, 2);
}

TEST(Cli, SelftestReportsFailingCriterion) {
  TempDir tmp;
  fs::copy(fixtures, tmp.path(), fs::copy_options::recursive);
  gdrazin::write_text_file(tmp.path() / "example21_b.json", gdrazin::format_matrix(GMatrix(3, 3)));
  const auto r = run({"selftest", "--filter", "examples", "--fixtures", tmp.path().string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("[1]"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
