#pragma once

#include <string>
#include <vector>

#include "core/expansion.hpp"
#include "core/melnikov.hpp"
#include "core/zeros.hpp"

namespace mel {

// Coefficients g_j of the inverse branch x = sigma(omega) = 1 - sqrt(1-omega)
// of 2x - x^2 = omega near x = 0; g_0 = 0, g_1 = 1/2, g_2 = 1/8, ...
std::vector<Rational> sigma_series(int order);

// Two mu ladders for re-expanding sqrt(1-h) = sum mu_i h^i:
//   taylor: the true Taylor coefficients, mu_i = -(2i-3)!!/(2i)!! for i >= 2;
//   paper:  the printed variant mu_i = -(2i-3)!!/2^i, kept to reproduce the
//           worked rank example verbatim (differs from taylor from i = 2 on).
enum class MuVariant { taylor, paper };
std::vector<Rational> mu_series(MuVariant variant, int order);

// B_j = 2 int_0^1 (1-u^2)^j du = 2 (2j)!! / (2j+1)!!.
Rational b_constant(int j);

struct RankCertificate {
  std::string which;
  int n = 0;
  int rank = 0;
  int expected = 0;
  std::vector<std::vector<SymScalar>> matrix;
  std::vector<std::string> row_labels, col_labels;

  bool ok() const { return rank == expected; }
  std::string to_json() const;
};

// The ((n+1)/2) x ((n+1)/2) Hankel-style matrix with entries
// mu_{(n-1)/2 + i - j + 1} (1-based), full rank (n+1)/2 for both mu variants.
RankCertificate tilde_a1(int n, MuVariant variant);

// The worked n = 7 example with the printed mu entries (-5!!/2^4 etc.).
RankCertificate appendix_matrix();

enum class ConstructKind { hopf, homoclinic };
const char* construct_kind_name(ConstructKind k);

// Exact Jacobian of the coefficient map of the endpoint construction family
// (the maps are linear, so the Jacobian is the map matrix), with its exact
// rank.  Expected: hopf 2n - floor(n/2) + 1; homoclinic n+1+n/2 for even n
// and n + (n-1)/2 + 2 for odd n (full row rank in both cases).
RankCertificate jacobian_rank(ConstructKind kind, int n);

struct ConstructionLedger {
  std::string kind;
  int n = 0;
  Rational t;
  std::vector<Rational> sigma;    // g_0..; hopf
  std::vector<Rational> p_tilde;  // hopf, from the solved spec
  std::vector<Rational> b_consts; // B_0..B_n
  std::vector<SymScalar> c_star;  // hopf, c*_j from the solved spec
  std::vector<Rational> mu;       // taylor ladder
  std::vector<SymScalar> d_list;      // homoclinic D_k
  std::vector<SymScalar> omega;       // homoclinic, M^-/( -2 sqrt(1-h) ) coefficients
  std::vector<SymScalar> v;           // homoclinic, M^+ part, h^k coefficients
  std::vector<SymScalar> v_star;      // homoclinic, M^+ part, h^{k+1} ln h coefficients
  std::vector<SymScalar> v_tilde;     // homoclinic, full M, h^i coefficients
  std::vector<SymScalar> c1;          // homoclinic C1 polynomial, h-coefficients
  std::vector<SymScalar> c2;          // homoclinic C2 series, h-coefficients
  SymScalar x_star;                   // -B_{n/2}/2^{n/2} for even n, else 0
  std::vector<std::vector<SymScalar>> jacobian;
  std::vector<std::string> jacobian_rows, jacobian_cols;
  std::vector<SymScalar> achieved_targets;  // exact row values of the solved spec

  std::string to_json() const;
};

struct Construction {
  PerturbationSpec spec;
  int predicted = 0;
  Rational t_requested, t_used;
  int attempts = 1;
  ZeroReport verification;
  ConstructionLedger ledger;

  std::string to_json() const;
};

// Realize n + floor((n+1)/2) simple zeros of Mbar near h = 1 (hopf) or h = 0
// (homoclinic) with the designated perturbation family, solving the exact
// coefficient map for a sign-alternating ladder and verifying the count by
// scan; t is halved on verification failure, up to 12 attempts.
Construction construct(ConstructKind kind, int n, const Rational& t);

}  // namespace mel
