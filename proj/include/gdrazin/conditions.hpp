#pragma once

#include "gdrazin/drazin.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace gdrazin {

/// Hypotheses under which an explicit formula for (a+b)^d is known.
enum class ConditionId {
  THM21, ///< a b a^pi = a^pi b^pi b a b^pi a^pi
  THM22, ///< THM21 and a^2 a^d b = a a^d b a
  THM23, ///< a b a^pi = a^pi b a a^pi
  LIU,   ///< a b a^pi = 0 (predicate only, no formula)
  COR21, ///< a b a^pi = b^pi b a b^pi a^pi and a^d a b = 0
  COR22, ///< a nilpotent and a b = b a
  COR23, ///< b a^pi = 0
  COR24, ///< a b a^pi = b a a^pi and a^d a b = 0
  COR25, ///< THM23 and a^2 a^d b = a a^d b a
  COR26, ///< a^pi b a = a^pi b^pi a b b^pi a^pi
  COR27, ///< a^pi b a = a^pi a b a^pi
  LEM12, ///< a nilpotent and a b = b^pi b a b^pi
  LEM13, ///< a b = b a
};

inline constexpr std::array<ConditionId, 13> all_conditions = {
    ConditionId::THM21, ConditionId::THM22, ConditionId::THM23, ConditionId::LIU,   ConditionId::COR21,
    ConditionId::COR22, ConditionId::COR23, ConditionId::COR24, ConditionId::COR25, ConditionId::COR26,
    ConditionId::COR27, ConditionId::LEM12, ConditionId::LEM13,
};

constexpr std::string_view to_string(ConditionId id) {
  constexpr std::array<std::string_view, 13> names = {"THM21", "THM22", "THM23", "LIU",   "COR21", "COR22", "COR23",
                                                      "COR24", "COR25", "COR26", "COR27", "LEM12", "LEM13"};
  return names[static_cast<std::size_t>(id)];
}

inline std::optional<ConditionId> parse_condition(std::string_view name) {
  for (auto id : all_conditions)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

constexpr bool has_formula(ConditionId id) { return id != ConditionId::LIU; }

/// Drazin data of a pair (a, b) shared by the condition checks and formulas.
template <ExactField T>
struct PairSpectra {
  Matrix<T> a, b;
  Matrix<T> ad, api; ///< a^d, a^pi
  Matrix<T> bd, bpi; ///< b^d, b^pi
  Matrix<T> p;       ///< a a^d
  std::size_t ind_a = 0, ind_b = 0;

  PairSpectra(Matrix<T> a_, Matrix<T> b_) : a(std::move(a_)), b(std::move(b_)) {
    require_same_square(a, b, "pair");
    auto da = drazin(a);
    auto db = drazin(b);
    ad = std::move(da.ad);
    api = std::move(da.api);
    ind_a = da.index;
    bd = std::move(db.ad);
    bpi = std::move(db.api);
    ind_b = db.index;
    p = a * ad;
  }

  [[nodiscard]] std::size_t n() const { return a.rows(); }
  [[nodiscard]] bool a_nilpotent() const { return ad.is_zero(); }
};

template <ExactField T>
bool check_condition(const PairSpectra<T> &s, ConditionId id) {
  const auto &a = s.a, &b = s.b, &ad = s.ad, &api = s.api, &bpi = s.bpi;
  auto thm21 = [&] { return a * b * api == api * bpi * b * a * bpi * api; };
  auto thm23 = [&] { return a * b * api == api * b * a * api; };
  auto core_commutes = [&] { return a * a * ad * b == s.p * b * a; };
  auto annihilates = [&] { return (ad * a * b).is_zero(); };
  switch (id) {
  case ConditionId::THM21: return thm21();
  case ConditionId::THM22: return thm21() && core_commutes();
  case ConditionId::THM23: return thm23();
  case ConditionId::LIU: return (a * b * api).is_zero();
  case ConditionId::COR21: return a * b * api == bpi * b * a * bpi * api && annihilates();
  case ConditionId::COR22: return s.a_nilpotent() && a * b == b * a;
  case ConditionId::COR23: return (b * api).is_zero();
  case ConditionId::COR24: return a * b * api == b * a * api && annihilates();
  case ConditionId::COR25: return thm23() && core_commutes();
  case ConditionId::COR26: return api * b * a == api * bpi * a * b * bpi * api;
  case ConditionId::COR27: return api * b * a == api * a * b * api;
  case ConditionId::LEM12: return s.a_nilpotent() && a * b == bpi * b * a * bpi;
  case ConditionId::LEM13: return a * b == b * a;
  }
  return false;
}

template <ExactField T>
bool check_condition(const Matrix<T> &a, const Matrix<T> &b, ConditionId id) {
  return check_condition(PairSpectra<T>(a, b), id);
}

} // namespace gdrazin
