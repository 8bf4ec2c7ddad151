#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nambu/expr.hpp"
#include "nambu/fields.hpp"
#include "nambu/polynomial.hpp"

namespace nambu {

struct InvariantCandidate {
  ScalarField u;
  std::string label;
};

struct InvariantReport {
  std::string label;
  CheckMode mode = CheckMode::kSymbolic;
  bool pass = false;
  // Canonical residual polynomial (symbolic mode) or max |A . grad u| over the
  // samples (sampled mode).
  std::optional<Polynomial> residual_polynomial;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<Polynomial> basis;
  std::vector<std::string> warnings;

  // Printable residual: the polynomial, or the sampled maximum.
  std::string residual_string() const;
};

// A . grad(u), simplified.
ScalarField invariant_residual(const VectorField3& drift, const ScalarField& u);

// Symbolic verdict when the residual is polynomial; otherwise sampled with the
// scale sum_i |A_i du/dx_i|. Throws std::invalid_argument for tolerance <= 0
// or zero samples.
InvariantReport verify_invariant(const VectorField3& drift, const InvariantCandidate& u,
                                 const SamplingOptions& options = {});

// Basis of { u : deg u <= max_degree, A . grad u == 0 } with exact rational
// coefficients. Each basis element is monic in its grlex-leading term and the
// list is sorted by leading monomial, so the constant 1 always comes first.
// Throws NotPolynomial if a component of `drift` is not a polynomial in the
// space variables alone (parameters must be bound beforehand).
std::vector<Polynomial> find_polynomial_invariants(const VectorField3& drift,
                                                   unsigned max_degree);

// Exact nullspace of a dense rational matrix (rows x cols), by reduced row
// echelon form. One basis vector per free column, ascending; each has a 1 in
// its free column.
std::vector<std::vector<Rational>> rational_nullspace(
    std::vector<std::vector<Rational>> matrix, std::size_t cols);

// (F1, F2) as functions of two auxiliary variables.
struct FunctionalPair {
  Expr f1;
  Expr f2;
  std::string u1_name = "u1";
  std::string u2_name = "u2";
};

// dF1/du1 dF2/du2 - dF1/du2 dF2/du1.
Expr jacobian_bracket(const FunctionalPair& pair);

struct CombinationReport {
  CheckMode mode = CheckMode::kSymbolic;
  bool pass = false;
  Expr bracket;
  // Residual A - [F1,F2](u1,u2) (grad u1 x grad u2), simplified.
  VectorField3 residual;
  ZeroCheck check;
  std::vector<std::string> warnings;
};

CombinationReport functional_combination_check(const VectorField3& drift,
                                               const ScalarField& u1,
                                               const ScalarField& u2,
                                               const FunctionalPair& pair,
                                               const SamplingOptions& options = {});

struct Reconstruction {
  // Set on success: A == grad(h) x grad(g).
  std::optional<ScalarField> h;
  std::optional<ScalarField> g;
  // True when the pair had to be swapped, i.e. (h, g) = (u2, u1).
  bool swapped = false;
  // On failure: A - grad(u1) x grad(u2).
  VectorField3 residual;
  ZeroCheck check;
  std::vector<std::string> warnings;

  bool success() const { return h.has_value(); }
};

Reconstruction reconstruct_nambu(const VectorField3& drift, const ScalarField& u1,
                                 const ScalarField& u2, const SamplingOptions& options = {});

// Warning text if [grad u1; grad u2] has rank < 2 at every sampled point.
std::optional<std::string> independence_warning(const ScalarField& u1, const ScalarField& u2,
                                                const SamplingOptions& options);

}  // namespace nambu
