#pragma once

#include "gdrazin/conditions.hpp"
#include "gdrazin/gaussian_rational.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gdrazin {

using GMatrix = Matrix<GaussianRational>;

struct GenSpec {
  std::size_t n = 4;
  std::size_t r = 2; ///< core rank of a, i.e. rank(a a^d)
  std::uint64_t seed = 0;
  ConditionId family = ConditionId::THM21;
  long entry_bound = 3; ///< max |entry| of sampled block entries
  bool complex_entries = false;
};

/// Largest absolute value (of either part) an emitted entry may have. Pairs over
/// the bound are rejected and resampled.
inline long max_generated_entry(std::size_t n, long entry_bound) {
  const long e = entry_bound;
  return 64L * e * e * e * static_cast<long>(n * n) * (1L << std::min<std::size_t>(n, 16));
}

struct DrazinSample {
  GMatrix a;
  GMatrix s;     ///< unimodular, a = s diag(A1, N2) s^-1
  GMatrix s_inv;
};

struct GeneratedPair {
  GMatrix a;
  GMatrix b;
  std::string subfamily; ///< which constructive sub-family produced b
  unsigned attempts = 1;
};

/// Deterministic stream: std::mt19937_64 is fully specified by the standard and
/// values are reduced by plain modulo, so output does not depend on the
/// standard library's distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(uniform(static_cast<long>(lo), static_cast<long>(hi)));
  }
  bool coin() { return (engine_() & 1U) != 0; }

private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace gen {

using GR = GaussianRational;

inline GR scalar(Rng &rng, long bound, bool complex) {
  const long re = rng.uniform(-bound, bound);
  if (!complex) return GR(re);
  return GR(mpq_class(re), mpq_class(rng.uniform(-bound, bound)));
}

inline GMatrix random_matrix(Rng &rng, std::size_t rows, std::size_t cols, long bound, bool complex) {
  GMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar(rng, bound, complex);
  return m;
}

inline GMatrix random_invertible(Rng &rng, std::size_t r, long bound, bool complex) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    GMatrix m = random_matrix(rng, r, r, bound, complex);
    if (rank(m) == r) return m;
  }
  // Unit lower triangular with a random strictly lower part is always invertible.
  GMatrix m = GMatrix::identity(r);
  for (std::size_t i = 1; i < r; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = scalar(rng, bound, complex);
  return m;
}

inline GMatrix strict_upper(Rng &rng, std::size_t m, long bound, bool complex) {
  GMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) out(i, j) = scalar(rng, bound, complex);
  return out;
}

/// Random unimodular integer matrix as a product of n+1 elementary operations
/// (row_i += +-row_j or a row swap), with its inverse tracked alongside.
inline std::pair<GMatrix, GMatrix> unimodular(Rng &rng, std::size_t n) {
  GMatrix s = GMatrix::identity(n);
  GMatrix s_inv = GMatrix::identity(n);
  if (n < 2) return {s, s_inv};
  for (std::size_t t = 0; t <= n; ++t) {
    const std::size_t i = rng.index(0, n - 1);
    std::size_t j = rng.index(0, n - 2);
    if (j >= i) ++j;
    if (rng.uniform(0, 3) == 0) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(s(i, k), s(j, k));
        std::swap(s_inv(k, i), s_inv(k, j));
      }
      continue;
    }
    const GR m = rng.coin() ? GR(1) : GR(-1);
    // S <- E S with E = 1 + m e_i e_j^T, so S^-1 <- S^-1 (1 - m e_i e_j^T).
    for (std::size_t k = 0; k < n; ++k) {
      s(i, k) += m * s(j, k);
      s_inv(k, j) -= m * s_inv(k, i);
    }
  }
  return {s, s_inv};
}

/// U T U^-1 with T upper triangular whose diagonal is drawn from a small set of
/// nonzero integers, so eigenvalues are known and often repeated.
inline std::pair<GMatrix, std::vector<long>> structured_core(Rng &rng, std::size_t r, long bound, bool complex) {
  static constexpr long kEigen[] = {-2, -1, 1, 2};
  GMatrix t = strict_upper(rng, r, bound, complex);
  std::vector<long> eig(r);
  for (std::size_t i = 0; i < r; ++i) {
    eig[i] = kEigen[rng.index(0, 3)];
    t(i, i) = GR(eig[i]);
  }
  auto [u, u_inv] = unimodular(rng, r);
  return {u * t * u_inv, eig};
}

inline GMatrix poly(const GMatrix &x, std::initializer_list<long> coeffs) {
  GMatrix acc(x.rows(), x.cols());
  GMatrix pw = GMatrix::identity(x.rows());
  for (long c : coeffs) {
    if (c != 0) acc += GR(c) * pw;
    pw = pw * x;
  }
  return acc;
}

/// [b1 0; b3 b4] for block sizes r and m.
inline GMatrix lower_blocks(const GMatrix &b1, const GMatrix &b3, const GMatrix &b4) {
  const std::size_t r = b1.rows(), m = b4.rows();
  GMatrix out(r + m, r + m);
  out.set_block(0, 0, b1);
  out.set_block(r, 0, b3);
  out.set_block(r, r, b4);
  return out;
}

struct Corner {
  GMatrix n2; ///< nilpotent block of a
  GMatrix b4;
  std::string label;
};

/// (n2, b4) with n2 b4 = b4^pi b4 n2 b4^pi. In a basis where b4 = diag(Bc, Bn)
/// (Bc invertible, Bn nilpotent) this holds iff n2 = [0 beta; 0 delta] with
/// beta Bn = 0 and delta Bn = Bn delta.
inline Corner thm21_corner(Rng &rng, std::size_t m, long bound, bool complex) {
  if (m == 0) return {GMatrix(), GMatrix(), "trivial-corner"};
  long pick = rng.uniform(0, 3);
  if (pick == 3) pick = 0;
  if (pick == 2 && m < 2) pick = 0;

  if (pick == 1) {
    // b4 a polynomial without constant term in n2
    GMatrix delta = strict_upper(rng, m, bound, complex);
    GMatrix b4 = poly(delta, {0, rng.uniform(-2, 2), rng.uniform(-2, 2)});
    return {std::move(delta), std::move(b4), "commuting-nilpotent"};
  }

  const std::size_t mc = (pick == 2 || (m > 1 && rng.uniform(0, 3) != 0)) ? rng.index(1, m - 1) : rng.index(1, m);
  const std::size_t mn = m - mc;
  GMatrix delta = strict_upper(rng, mn, bound, complex);
  GMatrix beta(mc, mn);
  GMatrix bn(mn, mn);
  if (pick == 0) {
    beta = random_matrix(rng, mc, mn, bound, complex);
  } else {
    bn = poly(delta, {0, rng.uniform(-2, 2), rng.uniform(-2, 2)});
    // The last row of bn is zero, so a beta supported on the last column has beta bn = 0.
    for (std::size_t i = 0; i < mc; ++i) beta(i, mn - 1) = scalar(rng, bound, complex);
  }
  GMatrix n2(m, m);
  n2.set_block(0, mc, beta);
  n2.set_block(mc, mc, delta);
  GMatrix b4 = block_diag(random_invertible(rng, mc, bound, complex), bn);
  return {std::move(n2), std::move(b4), pick == 0 ? "annihilating-core" : "mixed"};
}

/// (n2, b4) with n2 b4 = b4 n2: n2 = diag(J, 0), b4 = diag(poly(J), W). The
/// constant of poly(J) is often zero and W often singular, so that a2 + b4 is
/// usually neither invertible nor nilpotent.
inline Corner commuting_corner(Rng &rng, std::size_t m, long bound, bool complex) {
  if (m == 0) return {GMatrix(), GMatrix(), "trivial-corner"};
  std::size_t z = 0;
  if (rng.uniform(0, 5) != 0) z = m > 1 ? rng.index(1, m - 1) : 1;
  GMatrix j = strict_upper(rng, m - z, bound, complex);
  const long c0 = rng.uniform(0, 2) != 0 ? 0 : rng.uniform(-bound, bound);
  GMatrix pj = poly(j, {c0, rng.uniform(-2, 2), rng.uniform(-2, 2)});
  GMatrix w = random_matrix(rng, z, z, bound, complex);
  if (z > 1 && rng.coin()) w = random_matrix(rng, z, z - 1, bound, complex) * random_matrix(rng, z - 1, z, bound, complex);
  else if (z == 1 && rng.uniform(0, 3) == 0) w = GMatrix(1, 1);
  return {block_diag(j, GMatrix(z, z)), block_diag(pj, w), "commuting-polynomial"};
}

/// b1 with c = a1 + b1 either generic or deliberately singular (so c^pi != 0).
inline std::pair<GMatrix, bool> core_perturbation(Rng &rng, const GMatrix &a1, long bound, bool complex) {
  const std::size_t r = a1.rows();
  if (r == 0 || rng.coin()) return {random_matrix(rng, r, r, bound, complex), false};
  const std::size_t rc = rng.index(0, r - 1);
  auto [u, u_inv] = unimodular(rng, r);
  GMatrix c = u * block_diag(random_invertible(rng, rc, bound, complex), strict_upper(rng, r - rc, bound, complex)) *
              u_inv;
  return {c - a1, true};
}

inline bool within_bound(const GMatrix &m, long limit) {
  const mpq_class lim(limit);
  for (const auto &z : m.data())
    if (abs(z.real()) > lim || abs(z.imag()) > lim) return false;
  return true;
}

inline GeneratedPair build(const GenSpec &spec, Rng &rng) {
  using C = ConditionId;
  const std::size_t n = spec.n, r = spec.r, m = n - r;
  const long e = spec.entry_bound;
  const bool cx = spec.complex_entries;
  GeneratedPair out;

  if (spec.family == C::LEM13) {
    auto [s, s_inv] = unimodular(rng, n);
    auto [core, eig] = structured_core(rng, r, e, cx);
    // x = s diag(core, t + U, N) s^-1 where t = +-3 is not an eigenvalue of the
    // core. Each choice of a keeps exactly the core invertible:
    //   a = x          with no t block,
    //   a = x (x - t)  with a t block of any size,
    //   a = x - t      with the t block filling the nilpotent part.
    const long t = rng.coin() ? 3 : -3;
    const int form = static_cast<int>(rng.uniform(0, 2));
    const std::size_t j = form == 0 ? 0 : form == 2 ? m : rng.index(0, m);
    GMatrix shifted = strict_upper(rng, j, e, cx);
    for (std::size_t i = 0; i < j; ++i) shifted(i, i) = GR(t);
    const GMatrix x = s * block_diag(core, block_diag(shifted, strict_upper(rng, m - j, e, cx))) * s_inv;
    switch (form) {
    case 0: out.a = x; break;
    case 1: out.a = poly(x, {0, -t, 1}); break;
    default: out.a = poly(x, {-t, 1}); break;
    }
    if (rng.uniform(0, 3) == 0) {
      out.b = poly(x, {rng.uniform(-e, e), rng.uniform(-2, 2), rng.uniform(-1, 1)});
    } else {
      // Pick a + b = x (x - t') so the sum is singular with a nonzero core.
      const long t2 = eig.empty() ? 1 : eig[rng.index(0, eig.size() - 1)];
      out.b = poly(x, {0, -t2 * rng.uniform(0, 1), 1}) - out.a;
    }
    out.subfamily = "polynomials-in-one-matrix";
    return out;
  }

  auto [s, s_inv] = unimodular(rng, n);
  Corner corner;
  switch (spec.family) {
  case C::THM21:
  case C::THM22:
  case C::COR21:
  case C::LEM12: corner = thm21_corner(rng, m, e, cx); break;
  case C::COR23: corner = {strict_upper(rng, m, e, cx), GMatrix(m, m), "b-kills-a^pi"}; break;
  default: corner = commuting_corner(rng, m, e, cx); break;
  }

  GMatrix a1, b1;
  std::string core_label;
  if (spec.family == C::THM22 || spec.family == C::COR25) {
    auto [core, eig] = structured_core(rng, r, e, cx);
    a1 = std::move(core);
    const long c1 = rng.uniform(-2, 2);
    long c0 = rng.uniform(-e, e);
    if (!eig.empty() && rng.coin()) {
      // c = (1 + c1) a1 + c0 is singular on the chosen eigenvalue.
      c0 = -(1 + c1) * eig[rng.index(0, eig.size() - 1)];
      core_label = "+singular-c";
    }
    b1 = poly(a1, {c0, c1});
  } else {
    a1 = random_invertible(rng, r, e, cx);
    if (spec.family == C::COR21 || spec.family == C::COR24) {
      b1 = GMatrix(r, r);
    } else {
      auto [pert, singular] = core_perturbation(rng, a1, e, cx);
      b1 = std::move(pert);
      if (singular) core_label = "+singular-c";
    }
  }

  const GMatrix b3 = random_matrix(rng, m, r, e, cx);
  out.a = s * block_diag(a1, corner.n2) * s_inv;
  out.b = s * lower_blocks(b1, b3, corner.b4) * s_inv;
  out.subfamily = corner.label + core_label;
  return out;
}

} // namespace gen

/// a = S diag(A1, N2) S^-1 with S unimodular, A1 an invertible r x r integer
/// matrix and N2 strictly upper triangular, so rank(a a^d) = r and the index of
/// a is the nilpotency order of N2.
inline DrazinSample gen_drazin_matrix(const GenSpec &spec) {
  if (spec.r > spec.n) throw GenerationError("core rank r exceeds n");
  Rng rng(mix_seed(spec.seed ^ mix_seed(0xD7A2'0000ULL + spec.n * 131 + spec.r)));
  auto [s, s_inv] = gen::unimodular(rng, spec.n);
  const GMatrix a1 = gen::random_invertible(rng, spec.r, spec.entry_bound, spec.complex_entries);
  const GMatrix n2 = gen::strict_upper(rng, spec.n - spec.r, spec.entry_bound, spec.complex_entries);
  GMatrix a = s * block_diag(a1, n2) * s_inv;
  return {std::move(a), std::move(s), std::move(s_inv)};
}

struct TriangularSample {
  GMatrix a_blk; ///< in pAp
  GMatrix b_blk; ///< in (1-p)A(1-p)
  GMatrix c_blk; ///< in (1-p)Ap
  GMatrix p;
};

/// Lower triangular element relative to p = S diag(I_k, 0) S^-1. Each diagonal
/// block is itself a random matrix of random core rank, so both corner Drazin
/// inverses typically have a nonzero spectral idempotent.
inline TriangularSample gen_triangular(std::size_t n, std::size_t k, std::uint64_t seed, long entry_bound = 3) {
  if (k > n) throw GenerationError("rank(p) exceeds n");
  Rng rng(mix_seed(seed ^ mix_seed(0x7A1A'0000ULL + n * 257 + k)));
  auto [s, s_inv] = gen::unimodular(rng, n);
  auto block = [&](std::size_t m) {
    const std::size_t rc = rng.index(0, m);
    auto [u, u_inv] = gen::unimodular(rng, m);
    return u * block_diag(gen::random_invertible(rng, rc, entry_bound, false),
                          gen::strict_upper(rng, m - rc, entry_bound, false)) *
           u_inv;
  };
  const GMatrix a1 = block(k);
  const GMatrix b4 = block(n - k);
  const GMatrix c3 = gen::random_matrix(rng, n - k, k, entry_bound, false);
  auto embed = [&](const GMatrix &m) { return s * m * s_inv; };
  const GMatrix zk(k, k), zm(n - k, n - k), zc(n - k, k);
  return {embed(gen::lower_blocks(a1, zc, zm)), embed(gen::lower_blocks(zk, zc, b4)),
          embed(gen::lower_blocks(zk, c3, zm)), embed(block_diag(GMatrix::identity(k), zm))};
}

/// Seeded pair (a, b) satisfying the hypotheses of `spec.family`, built in block
/// coordinates relative to p = a a^d (with p b (1-p) = 0) and certified with
/// check_condition before it is returned.
///
/// Sub-families per family:
///  - THM21, THM22, COR21, LEM12: the corner pair (a2, b4) is "annihilating-core"
///    (a2 b4 = 0 with b4 having an invertible part), "commuting-nilpotent"
///    (b4 a polynomial in a2) or "mixed" (both at once).
///  - THM23, COR22, COR24, COR25: a2 and b4 commute ("commuting-polynomial").
///  - COR23: b (1-p) = 0; COR21, COR24: p b = 0; THM22, COR25: b1 a polynomial in a1.
///  - LEM13: a and b polynomials in one matrix.
///  - COR26, COR27: transposes of THM21, THM23 pairs.
/// A "+singular-c" suffix marks pairs where c = a a^d (a+b) was made singular.
inline GeneratedPair gen_pair(const GenSpec &spec) {
  using C = ConditionId;
  if (spec.n == 0) throw GenerationError("n must be positive");
  if (spec.r > spec.n) throw GenerationError("core rank r exceeds n");
  if (spec.entry_bound < 1) throw GenerationError("entry_bound must be positive");
  if ((spec.family == C::COR22 || spec.family == C::LEM12) && spec.r != 0)
    throw GenerationError(std::string(to_string(spec.family)) + " requires a nilpotent (r = 0)");
  if (spec.family == C::LIU) throw GenerationError("no generator for LIU");

  if (spec.family == C::COR26 || spec.family == C::COR27) {
    GenSpec primal = spec;
    primal.family = spec.family == C::COR26 ? C::THM21 : C::THM23;
    GeneratedPair g = gen_pair(primal);
    g.a = g.a.transpose();
    g.b = g.b.transpose();
    if (!check_condition(g.a, g.b, spec.family))
      throw GenerationError("generation failed after max attempts (" + std::string(to_string(spec.family)) + ")");
    return g;
  }

  constexpr unsigned kMaxAttempts = 16;
  const long limit = max_generated_entry(spec.n, spec.entry_bound);
  for (unsigned attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::uint64_t stream =
        mix_seed(spec.seed ^ mix_seed((static_cast<std::uint64_t>(spec.family) << 40) ^ (spec.n << 24) ^
                                      (spec.r << 8) ^ attempt));
    Rng rng(stream);
    GeneratedPair pair = gen::build(spec, rng);
    if (!gen::within_bound(pair.a, limit) || !gen::within_bound(pair.b, limit)) continue;
    if (!check_condition(pair.a, pair.b, spec.family)) continue;
    pair.attempts = attempt + 1;
    return pair;
  }
  throw GenerationError("generation failed after max attempts (" + std::string(to_string(spec.family)) + ")");
}

} // namespace gdrazin
