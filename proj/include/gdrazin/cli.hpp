#pragma once

#include "gdrazin/acceptance.hpp"
#include "gdrazin/additive.hpp"
#include "gdrazin/instance_gen.hpp"
#include "gdrazin/matrix_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gdrazin::cli {

/// Exit codes shared by every command.
enum Exit : int {
  ok = 0,
  failed = 1,      ///< a condition does not hold, a hypothesis is violated, or generation failed
  input_error = 2, ///< unreadable or malformed input, bad flags
  mismatch = 3,    ///< a formula disagrees with the oracle, or a self-test criterion failed
};

namespace detail {

using json = nlohmann::ordered_json;

inline ConditionId condition_arg(const std::string &name) {
  if (auto id = parse_condition(name)) return *id;
  throw ParseError("unknown condition " + name);
}

inline void print(std::ostream &out, const json &j) { out << j.dump() << '\n'; }

inline int cmd_drazin(const std::string &file, std::ostream &out) {
  const GMatrix a = read_matrix_file(file);
  const auto d = drazin(a);
  json j;
  j["ad"] = matrix_to_json(d.ad);
  j["index"] = d.index;
  j["api"] = matrix_to_json(d.api);
  print(out, j);
  return ok;
}

inline int cmd_check(const std::string &fa, const std::string &fb, const std::optional<std::string> &condition,
                     std::ostream &out) {
  const GMatrix a = read_matrix_file(fa), b = read_matrix_file(fb);
  require_same_square(a, b, "check");
  std::vector<ConditionId> ids;
  if (condition) ids.push_back(condition_arg(*condition));
  else ids.assign(all_conditions.begin(), all_conditions.end());

  const PairSpectra<GaussianRational> s(a, b);
  json j = json::object();
  bool all = true;
  for (auto id : ids) {
    const bool holds = check_condition(s, id);
    j[std::string(to_string(id))] = holds;
    all = all && holds;
  }
  print(out, j);
  return all ? ok : failed;
}

inline int cmd_sum(const std::string &fa, const std::string &fb, const std::string &method, bool verify,
                   std::ostream &out, std::ostream &err) {
  const ConditionId id = condition_arg(method);
  if (!has_formula(id)) throw ParseError("condition " + method + " has no formula");
  const GMatrix a = read_matrix_file(fa), b = read_matrix_file(fb);
  require_same_square(a, b, "sum");
  const auto ev = evaluate_formula(a, b, id);
  if (!verify) {
    print(out, matrix_to_json(ev.value));
    return ok;
  }
  const GMatrix oracle = drazin(GMatrix(a + b)).ad;
  const bool match = ev.value == oracle;
  json j;
  j["method"] = method;
  j["result"] = matrix_to_json(ev.value);
  j["oracle"] = matrix_to_json(oracle);
  j["match"] = match;
  j["truncation_orders"] = ev.orders;
  print(out, j);
  if (!match) err << "mismatch: " << method << " formula disagrees with drazin(a+b)\n";
  return match ? ok : mismatch;
}

inline int cmd_generate(const GenSpec &spec, const std::filesystem::path &dir, std::ostream &out) {
  const auto pair = gen_pair(spec);
  json cert;
  cert["family"] = std::string(to_string(spec.family));
  cert["n"] = spec.n;
  cert["r"] = spec.r;
  cert["seed"] = spec.seed;
  cert["entry_bound"] = spec.entry_bound;
  cert["complex"] = spec.complex_entries;
  cert["subfamily"] = pair.subfamily;
  cert["condition_holds"] = check_condition(pair.a, pair.b, spec.family);
  cert["oracle"] = matrix_to_json(drazin(GMatrix(pair.a + pair.b)).ad);

  std::filesystem::create_directories(dir);
  write_text_file(dir / "a.json", format_matrix(pair.a) + "\n");
  write_text_file(dir / "b.json", format_matrix(pair.b) + "\n");
  write_text_file(dir / "certificate.json", cert.dump() + "\n");
  print(out, cert);
  return ok;
}

inline int cmd_selftest(const acceptance::Options &opt, std::ostream &out, std::ostream &err) {
  const auto all = acceptance::criteria();
  if (!std::any_of(all.begin(), all.end(), [&](const auto &c) { return acceptance::selected(c, opt.filter); }))
    throw ParseError("no criterion matches filter " + opt.filter);
  const auto results = acceptance::run(opt, &out);
  std::size_t passed = 0;
  for (const auto &r : results) passed += r.passed ? 1 : 0;
  out << passed << "/" << results.size() << " criteria passed\n";
  for (const auto &r : results)
    if (!r.passed) {
      err << "first failing criterion: [" << r.id << "] " << r.title << "\n";
      return mismatch;
    }
  return ok;
}

} // namespace detail

/// Runs the command line `args` (without the program name).
inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact Drazin inverses and additive formulas over Q(i)", "gdrazin"};
  app.require_subcommand(1);

  std::string file_a, file_b, condition, method, out_dir, filter;
  bool all = false, verify = false, complex = false;
  std::string family = "THM21";
  std::string fixture_dir = GDRAZIN_FIXTURE_DIR;
  GenSpec spec;

  auto *drz = app.add_subcommand("drazin", "print a^d, the index and a^pi of a matrix file");
  drz->add_option("file", file_a, "matrix file")->required();

  auto *chk = app.add_subcommand("check", "evaluate additive conditions on a pair");
  chk->add_option("a", file_a, "matrix file for a")->required();
  chk->add_option("b", file_b, "matrix file for b")->required();
  auto *cond_opt = chk->add_option("--condition", condition, "condition id");
  auto *all_opt = chk->add_flag("--all", all, "check every condition");
  cond_opt->excludes(all_opt);

  auto *sum = app.add_subcommand("sum", "compute (a+b)^d with an additive formula");
  sum->add_option("a", file_a, "matrix file for a")->required();
  sum->add_option("b", file_b, "matrix file for b")->required();
  sum->add_option("--method", method, "condition id of the formula")->required();
  sum->add_flag("--verify", verify, "compare with the Drazin inverse of a+b");

  auto *gen = app.add_subcommand("generate", "write a certified pair to a directory");
  gen->add_option("--family", family, "condition id")->required();
  gen->add_option("-n", spec.n, "dimension")->required();
  gen->add_option("-r", spec.r, "core rank of a")->required();
  gen->add_option("--seed", spec.seed, "seed")->required();
  gen->add_option("-o,--out", out_dir, "output directory")->required();
  gen->add_option("--entry-bound", spec.entry_bound, "bound on sampled entries");
  gen->add_flag("--complex", complex, "sample Gaussian rational entries");

  auto *self = app.add_subcommand("selftest", "run the acceptance criteria");
  self->add_option("--filter", filter, "criterion tag or number");
  self->add_option("--fixtures", fixture_dir, "fixture directory");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    if (*drz) return detail::cmd_drazin(file_a, out);
    if (*chk && !all && cond_opt->count() == 0) throw ParseError("check needs --condition ID or --all");
    if (*chk) return detail::cmd_check(file_a, file_b, all ? std::nullopt : std::optional(condition), out);
    if (*sum) return detail::cmd_sum(file_a, file_b, method, verify, out, err);
    if (*gen) {
      spec.family = detail::condition_arg(family);
      spec.complex_entries = complex;
      return detail::cmd_generate(spec, out_dir, out);
    }
    if (*self) return detail::cmd_selftest({.fixture_dir = fixture_dir, .filter = filter}, out, err);
  } catch (const HypothesisViolation &e) {
    err << e.what() << '\n';
    return failed;
  } catch (const GenerationError &e) {
    err << e.what() << '\n';
    return failed;
  } catch (const std::exception &e) {
    err << e.what() << '\n';
    return input_error;
  }
  return input_error;
}

} // namespace gdrazin::cli
