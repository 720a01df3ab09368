#pragma once

#include "gdrazin/additive.hpp"
#include "gdrazin/instance_gen.hpp"
#include "gdrazin/matrix_io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#ifndef GDRAZIN_FIXTURE_DIR
#define GDRAZIN_FIXTURE_DIR "fixtures"
#endif

namespace gdrazin::acceptance {

struct Options {
  std::filesystem::path fixture_dir = GDRAZIN_FIXTURE_DIR;
  std::string filter; ///< empty, a criterion tag, or a criterion number
};

struct Result {
  int id = 0;
  std::string tag;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

/// Counts checks and remembers the first failure.
class Tally {
public:
  void check(bool ok, const std::string &what) {
    ++checks_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    failures_ += ok ? 0 : 1;
  }
  [[nodiscard]] bool ok() const { return failures_ == 0; }
  [[nodiscard]] std::string summary() const {
    std::string s = std::to_string(checks_ - failures_) + "/" + std::to_string(checks_) + " checks";
    if (!ok()) s += "; first failure: " + first_failure_;
    return s;
  }

private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_failure_;
};

struct Criterion {
  int id;
  std::string tag;
  std::string title;
  double limit_seconds;
  std::function<Tally(const Options &)> body;
};

namespace detail {

inline std::string label(ConditionId id, const GenSpec &g) {
  return std::string(to_string(id)) + " n=" + std::to_string(g.n) + " r=" + std::to_string(g.r) +
         " seed=" + std::to_string(g.seed);
}

/// i-th (n, r) in a sweep over n in [3, 8] and every core rank.
inline GenSpec sweep_spec(ConditionId family, std::size_t i) {
  GenSpec g;
  g.family = family;
  g.n = 3 + i % 6;
  g.r = (i / 6) % (g.n + 1);
  if (family == ConditionId::COR22 || family == ConditionId::LEM12) g.r = 0;
  g.seed = 1000 + i;
  return g;
}

inline GMatrix shift3() { return GMatrix{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}; }

inline Tally golden_liu_only(const Options &opt) {
  Tally t;
  const GMatrix a = read_matrix_file(opt.fixture_dir / "example21_a.json");
  const GMatrix b = read_matrix_file(opt.fixture_dir / "example21_b.json");
  t.check(a == GMatrix({{0, 0, 0}, {0, 0, 0}, {0, 1, 0}}), "fixture a matches the expected matrix");
  t.check(b == GMatrix({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}), "fixture b matches the expected matrix");
  t.check((a * a).is_zero() && (b * b).is_zero(), "a^2 = b^2 = 0");
  t.check(drazin(a).api == GMatrix::identity(3) && drazin(b).api == GMatrix::identity(3), "a^pi = b^pi = 1");
  t.check(b * a == GMatrix({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), "b a = [[0,1,0],[0,0,0],[0,0,0]]");
  t.check(check_condition(a, b, ConditionId::LIU), "LIU holds");
  t.check(!check_condition(a, b, ConditionId::THM21), "THM21 fails");
  return t;
}

inline Tally golden_thm21_only(const Options &opt) {
  Tally t;
  const GMatrix a = read_matrix_file(opt.fixture_dir / "example22_a.json");
  const GMatrix b = read_matrix_file(opt.fixture_dir / "example22_b.json");
  t.check(a == shift3() && b == shift3(), "fixtures hold a = b = lower shift");
  const GMatrix a2 = GMatrix{{0, 0, 0}, {0, 0, 0}, {1, 0, 0}};
  t.check(a * a == a2, "a^2 = [[0,0,0],[0,0,0],[1,0,0]]");
  t.check(power(a, 3).is_zero(), "a^3 = 0");
  const GMatrix api = drazin(a).api;
  t.check(api == GMatrix::identity(3), "a^pi = 1");
  t.check(a * b * api == a2 && !(a * b * api).is_zero(), "a b a^pi = a^2 != 0");
  t.check(check_condition(a, b, ConditionId::THM21), "THM21 holds");
  t.check(!check_condition(a, b, ConditionId::LIU), "LIU fails");
  return t;
}

inline Tally drazin_axioms(const Options &) {
  Tally t;
  std::size_t count = 0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t r = 0; r <= n; ++r)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        GenSpec g{.n = n, .r = r, .seed = seed};
        const auto sample = gen_drazin_matrix(g);
        const auto &a = sample.a;
        const auto d = drazin(a);
        const std::string where = "n=" + std::to_string(n) + " r=" + std::to_string(r) + " seed=" + std::to_string(seed);
        t.check(verify_drazin(a, d.ad), "axioms " + where);
        t.check(d.api * d.api == d.api, "a^pi idempotent " + where);
        t.check(d.api * a == a * d.api, "a^pi commutes " + where);
        t.check(power(GMatrix(a * d.api), std::max<std::size_t>(d.index, 1)).is_zero(), "(a a^pi)^index = 0 " + where);
        t.check(rank(GMatrix(a * d.ad)) == r, "rank(a a^d) = r " + where);
        ++count;
      }
  t.check(count >= 200, "at least 200 matrices");
  return t;
}

inline Tally triangular(const Options &) {
  Tally t;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const std::size_t k = 1 + seed % (n - 1);
      const auto x = gen_triangular(n, k, seed);
      const GMatrix got = lemma11_triangular_drazin(x.a_blk, x.b_blk, x.c_blk, x.p);
      const GMatrix want = drazin(GMatrix(x.a_blk + x.b_blk + x.c_blk)).ad;
      t.check(got == want, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " seed=" + std::to_string(seed));
    }
  return t;
}

inline Tally thm21(const Options &) {
  Tally t;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < 100; ++i) {
    const GenSpec g = sweep_spec(ConditionId::THM21, i);
    const auto pair = gen_pair(g);
    seen.insert(pair.subfamily.substr(0, pair.subfamily.find('+')));
    const GMatrix oracle = drazin(GMatrix(pair.a + pair.b)).ad;
    const auto ev = sum_thm21(pair.a, pair.b);
    t.check(ev.value == oracle, "formula = oracle " + label(g.family, g));
    t.check(sum_thm21(pair.a, pair.b, SeriesOptions{1}).value == ev.value, "one extra term " + label(g.family, g));
  }
  t.check(seen.contains("annihilating-core"), "annihilating-core sub-family represented");
  t.check(seen.contains("commuting-nilpotent"), "commuting-nilpotent sub-family represented");
  return t;
}

inline Tally thm22(const Options &) {
  Tally t;
  for (std::size_t i = 0; i < 50; ++i) {
    const GenSpec g = sweep_spec(ConditionId::THM22, i);
    const auto pair = gen_pair(g);
    const PairSpectra<GaussianRational> s(pair.a, pair.b);
    const GMatrix c = s.p * (pair.a + pair.b);
    t.check(cd_eq6(pair.a, pair.b) == corner_drazin(c, s.p).ad, "c^d = corner oracle " + label(g.family, g));
    t.check(sum_thm22(pair.a, pair.b).value == drazin(GMatrix(pair.a + pair.b)).ad,
            "formula = oracle " + label(g.family, g));
  }
  return t;
}

inline Tally thm23(const Options &) {
  Tally t;
  for (std::size_t i = 0; i < 100; ++i) {
    const GenSpec g = sweep_spec(ConditionId::THM23, i);
    const auto pair = gen_pair(g);
    t.check(sum_thm23(pair.a, pair.b).value == drazin(GMatrix(pair.a + pair.b)).ad,
            "formula = oracle " + label(g.family, g));
  }
  return t;
}

inline Tally corollaries(const Options &) {
  using C = ConditionId;
  Tally t;
  for (auto id : {C::COR21, C::COR22, C::COR23, C::COR24, C::COR25}) {
    for (std::size_t i = 0; i < 50; ++i) {
      const GenSpec g = sweep_spec(id, i);
      const auto pair = gen_pair(g);
      const GMatrix value = evaluate_formula(pair.a, pair.b, id).value;
      t.check(value == drazin(GMatrix(pair.a + pair.b)).ad, "formula = oracle " + label(id, g));
      if (id == C::COR22) t.check(value == sum_thm23(pair.a, pair.b).value, "COR22 = THM23 " + label(id, g));
      if (id == C::COR21) t.check(value == sum_thm21(pair.a, pair.b).value, "COR21 = THM21 " + label(id, g));
    }
  }
  return t;
}

inline Tally duality(const Options &) {
  using C = ConditionId;
  Tally t;
  for (auto id : {C::COR26, C::COR27}) {
    for (std::size_t i = 0; i < 50; ++i) {
      const GenSpec g = sweep_spec(id, i);
      const auto pair = gen_pair(g);
      const GMatrix value = sum_dual(pair.a, pair.b, id).value;
      t.check(value == drazin(GMatrix(pair.a + pair.b)).ad, "formula = oracle " + label(id, g));
      const GMatrix at = pair.a.transpose(), bt = pair.b.transpose();
      const GMatrix primal = id == C::COR26 ? sum_thm21(at, bt).value : sum_thm23(at, bt).value;
      t.check(value == primal.transpose(), "dual = transposed primal " + label(id, g));
    }
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenSpec g{.n = 1 + seed % 8, .seed = seed, .complex_entries = seed % 2 == 1};
    g.r = (seed / 8) % (g.n + 1);
    const GMatrix a = gen_drazin_matrix(g).a;
    t.check(drazin(a.transpose()).ad == drazin(a).ad.transpose(), "(a^T)^d = (a^d)^T seed=" + std::to_string(seed));
  }
  return t;
}

} // namespace detail

inline std::vector<Criterion> criteria() {
  return {
      {1, "examples", "golden pair where aba^pi = 0 but THM21 fails", 1.0, detail::golden_liu_only},
      {2, "examples", "golden nilpotent shift a = b where THM21 holds but aba^pi != 0", 1.0,
       detail::golden_thm21_only},
      {3, "drazin", "Drazin axioms on >= 200 generated matrices", 60.0, detail::drazin_axioms},
      {4, "triangular", "triangular block formula = drazin on 100 instances per n in 2..8", 120.0,
       detail::triangular},
      {5, "thm21", "THM21 formula = oracle on 100 pairs, truncation sound", 120.0, detail::thm21},
      {6, "thm22", "explicit c^d = corner oracle and THM22 formula = oracle on 50 pairs", 60.0, detail::thm22},
      {7, "thm23", "THM23 formula = oracle on 100 pairs", 120.0, detail::thm23},
      {8, "corollaries", "COR21-COR25 = oracle on 50 pairs each, with cross-checks", 180.0, detail::corollaries},
      {9, "duality", "COR26/COR27 = oracle and = transposed primal; (a^T)^d = (a^d)^T", 120.0, detail::duality},
  };
}

inline bool selected(const Criterion &c, const std::string &filter) {
  return filter.empty() || filter == c.tag || filter == std::to_string(c.id);
}

inline std::string format_result(const Result &r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", r.seconds, r.limit_seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + "  [" + std::to_string(r.id) + "] " + r.title + "  (" + timing +
         ")  " + r.detail;
}

/// Runs the selected criteria. Fixture parse errors propagate as ParseError;
/// any other exception fails the criterion that raised it.
inline std::vector<Result> run(const Options &opt, std::ostream *progress = nullptr) {
  std::vector<Result> results;
  for (const auto &c : criteria()) {
    if (!selected(c, opt.filter)) continue;
    Result r;
    r.id = c.id;
    r.tag = c.tag;
    r.title = c.title;
    r.limit_seconds = c.limit_seconds;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Tally t = c.body(opt);
      r.passed = t.ok();
      r.detail = t.summary();
    } catch (const ParseError &) {
      throw;
    } catch (const std::exception &e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > r.limit_seconds) {
      r.passed = false;
      r.detail += "; exceeded time limit";
    }
    if (progress) *progress << format_result(r) << '\n' << std::flush;
    results.push_back(std::move(r));
  }
  return results;
}

} // namespace gdrazin::acceptance
