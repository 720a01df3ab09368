#include "gdrazin/acceptance.hpp"
#include "gdrazin/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using gdrazin::GMatrix;
using gdrazin::acceptance::Tally;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gdrazin::cli::run(std::move(args), out, err);
  return {code, out.str()};
}

Tally cli_contract(const fs::path &fixtures, const fs::path &tmp) {
  Tally t;
  auto fx = [&](const char *name) { return (fixtures / name).string(); };
  const std::string a21 = fx("example21_a.json"), b21 = fx("example21_b.json");

  const auto d = cli({"drazin", a21});
  t.check(d.code == 0, "drazin exits 0");
  const auto dj = json::parse(d.out);
  t.check(gdrazin::matrix_from_json(dj["ad"]).is_zero() && dj["index"] == 2 &&
              gdrazin::matrix_from_json(dj["api"]) == GMatrix::identity(3),
          "drazin of example21_a");
  t.check(cli({"drazin", a21}).out == d.out, "drazin output deterministic");

  const fs::path gen_a = tmp / "gen-a", gen_b = tmp / "gen-b";
  for (const auto &dir : {gen_a, gen_b})
    t.check(cli({"generate", "--family", "THM21", "-n", "6", "-r", "3", "--seed", "42", "-o", dir.string()}).code == 0,
            "generate exits 0");
  for (const char *f : {"a.json", "b.json", "certificate.json"})
    t.check(gdrazin::read_text_file(gen_a / f) == gdrazin::read_text_file(gen_b / f),
            std::string("generate is byte-identical for ") + f);
  const auto cert = json::parse(gdrazin::read_text_file(gen_a / "certificate.json"));
  t.check(cert["condition_holds"] == true, "certificate condition_holds");

  const GMatrix a = gdrazin::read_matrix_file(gen_a / "a.json");
  t.check(gdrazin::parse_matrix(gdrazin::format_matrix(a)) == a, "matrix round-trip");
  const auto gd = cli({"drazin", (gen_a / "a.json").string()});
  t.check(gdrazin::verify_drazin(a, gdrazin::matrix_from_json(json::parse(gd.out)["ad"])), "drazin output re-parses");

  const auto sum = cli({"sum", (gen_a / "a.json").string(), (gen_a / "b.json").string(), "--method", "THM21", "--verify"});
  t.check(sum.code == 0 && json::parse(sum.out)["match"] == true, "sum --verify matches");

  t.check(cli({"check", a21, b21, "--condition", "LIU"}).code == 0, "check holding condition exits 0");
  t.check(cli({"check", a21, b21, "--condition", "THM21"}).code == 1, "check failing condition exits 1");
  t.check(cli({"sum", a21, b21, "--method", "THM21"}).code == 1, "violated hypothesis exits 1");
  t.check(cli({"drazin", (tmp / "missing.json").string()}).code == 2, "missing input exits 2");
  t.check(cli({"generate", "--family", "COR22", "-n", "4", "-r", "2", "--seed", "1", "-o", (tmp / "x").string()})
                  .code == 1,
          "generation failure exits 1");

  const fs::path bad = tmp / "bad-fixtures";
  fs::create_directories(bad);
  fs::copy(fixtures, bad, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  gdrazin::write_text_file(bad / "example22_a.json", "[");
  t.check(cli({"selftest", "--filter", "examples", "--fixtures", bad.string()}).code == 2, "corrupted fixture exits 2");

  const auto self = cli({"selftest", "--fixtures", fixtures.string()});
  t.check(self.code == 0, "selftest over criteria 1-9 exits 0");
  return t;
}

} // namespace

int main() {
  const gdrazin::acceptance::Options opt;
  bool all = true;
  try {
    for (const auto &r : gdrazin::acceptance::run(opt, &std::cout)) all = all && r.passed;
  } catch (const std::exception &e) {
    std::cout << "FAIL  fixtures unreadable: " << e.what() << '\n';
    return 1;
  }

  const fs::path tmp = fs::temp_directory_path() / ("gdrazin-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  gdrazin::acceptance::Result r;
  r.id = 10;
  r.tag = "cli";
  r.title = "CLI round-trip, exit codes, determinism, selftest";
  r.limit_seconds = 120.0;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Tally t = cli_contract(opt.fixture_dir, tmp);
    r.passed = t.ok();
    r.detail = t.summary();
  } catch (const std::exception &e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > r.limit_seconds) {
    r.passed = false;
    r.detail += "; exceeded time limit";
  }
  fs::remove_all(tmp);
  std::cout << gdrazin::acceptance::format_result(r) << '\n';
  all = all && r.passed;
  std::cout << (all ? "all acceptance criteria passed" : "acceptance criteria FAILED") << '\n';
  return all ? 0 : 1;
}
