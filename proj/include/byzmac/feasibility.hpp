#pragma once

#include <string>
#include <vector>

#include "byzmac/mac.hpp"

namespace byzmac {

/// One linear term of an equality constraint: coeff * K[kernel][row][out].
struct KernelTerm {
  int kernel = 0;
  int row = 0;  // flattened input tuple
  int out = 0;
  double coeff = 0.0;
};

struct LinearEquality {
  std::vector<KernelTerm> terms;
  double rhs = 0.0;
};

/// Linear feasibility over row-stochastic kernel variables: find kernels
/// satisfying every equality, or report how far from satisfiable they are.
struct FeasibilityProblem {
  std::vector<Kernel> kernel_shapes;  // tables ignored; shapes define the variables
  std::vector<LinearEquality> equalities;
  std::string label;
};

enum class Verdict { FEASIBLE, INFEASIBLE, INCONCLUSIVE };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::FEASIBLE: return "FEASIBLE";
    case Verdict::INFEASIBLE: return "INFEASIBLE";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

struct FeasibilityOutcome {
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::vector<Kernel> certificate;  // populated when FEASIBLE
  double violation = 0.0;           // max |residual| of the certificate (relative, see below)
  double margin = 0.0;              // minimized total violation when not FEASIBLE
  int iterations = 0;
};

/// Minimizes the total absolute violation of the equalities over row-stochastic
/// kernels (a phase-1 linear program, solved by a dense simplex with
/// deterministic lexicographic tie-breaking). Each equality is pre-scaled by
/// its largest coefficient magnitude, so residuals are relative and the
/// verdict is invariant under positive rescaling of constraint rows.
/// Verdict: FEASIBLE when the optimum total violation is <= tol; INFEASIBLE
/// when it exceeds 10*tol; INCONCLUSIVE between.
FeasibilityOutcome solve_linear_feasibility(const FeasibilityProblem& problem, double tol = 1e-9);

/// Largest relative violation over all equalities plus stochasticity
/// deviations; independent re-check of a certificate by direct substitution.
double verify_certificate(const FeasibilityProblem& problem, const std::vector<Kernel>& kernels);

}  // namespace byzmac
