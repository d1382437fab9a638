#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pdecanon/transform.hpp"

namespace pdecanon {

/// Concrete polynomial substituted for u; its symbols are variable names.
struct TestFunction {
  VarSet vars;
  MPoly poly;
};

struct Residual {
  Rational value;
  /// "DegenerateTestFunction: ..." when a derivative used by the equation
  /// vanishes identically on the test function.
  std::vector<std::string> warnings;
};

/// Exact value of p[u := f] at `point` (one rational per variable of f).
/// Throws Error(DimensionMismatch), Error(MissingParam) or Error(PoleAtPoint).
Residual residual_eval(const DiffPoly& p, const TestFunction& f, const std::vector<Rational>& point,
                       const std::map<std::string, Rational>& params);

struct ConsistencyCheck {
  bool consistent = false;
  Rational original;     // residual of p on f at point
  Rational transformed;  // residual of pullback(p, T) on f o T^-1 at T(point)
  std::vector<Rational> image_point;
};

/// Compares a residual before and after the change of variables, inverting T
/// numerically at `params` without using the symbolic chain rule.
ConsistencyCheck pullback_consistency_check(const DiffPoly& p, const AffineTransform& t,
                                            const TestFunction& f, const std::vector<Rational>& point,
                                            const std::map<std::string, Rational>& params);

// ------------------------------------------------------------- randomness

/// Seed from the flag, else PDECANON_SEED, else a fixed default.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

/// p/q with p, q drawn from [-9, 9] \ {0}.
Rational random_rational(std::mt19937_64& rng);
std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n);

/// Random values avoiding the zeros of every condition in `avoid`.
/// Throws Error(NoSolution) after `max_tries` rejected draws.
std::map<std::string, Rational> random_params(std::mt19937_64& rng,
                                              const std::vector<std::string>& names,
                                              const DegeneracyReport& avoid = {},
                                              int max_tries = 1000);

/// Polynomial in vars with `terms` random monomials of total degree <= degree.
TestFunction random_test_function(std::mt19937_64& rng, const VarSet& vars, unsigned degree,
                                  unsigned terms);

/// Random differential polynomial with coefficients c*param^e.
DiffPoly random_diffpoly(std::mt19937_64& rng, const VarSet& vars,
                         const std::vector<std::string>& params, unsigned max_order,
                         unsigned max_degree, unsigned terms);

/// Random affine transform with nonzero determinant; some entries carry a
/// parameter factor. Target names are the source names with a prime.
AffineTransform random_transform(std::mt19937_64& rng, const VarSet& vars,
                                 const std::vector<std::string>& params);

}  // namespace pdecanon
