#pragma once

#include <array>
#include <optional>
#include <string>

#include "byzmac/feasibility.hpp"
#include "byzmac/mac.hpp"

namespace byzmac {

enum class AvSymKind { X, Y, XY };

/// Problem builders. Each encodes one of the channel conditions as data for
/// the feasibility solver; the variable kernels are, in order:
///   spoofable_1:  Q_{Y|X~Y~} (inputs X,Y -> Y), Q_{X|X~X'} (inputs X,X -> X)
///   spoofable_2:  Q_{X|X~Y~} (inputs X,Y -> X), Q_{Y|Y~Y'} (inputs Y,Y -> Y)
///   symmetrizable user 2: P_{X|Y};  user 1: P_{Y|X}
///   overwritable user 2:  P_{X'|XY}; user 1: P_{Y'|XY}
FeasibilityProblem spoofable_problem(const Mac& ch, int user);
FeasibilityProblem symmetrizable_problem(const Mac& ch, int user);
FeasibilityProblem overwritable_problem(const Mac& ch, int user);
FeasibilityProblem avmac_symmetrizable_problem(const AvMac& ch, AvSymKind kind);

FeasibilityOutcome check_spoofable_1(const Mac& ch, double tol = 1e-9);
FeasibilityOutcome check_spoofable_2(const Mac& ch, double tol = 1e-9);
FeasibilityOutcome check_symmetrizable(const Mac& ch, int user, double tol = 1e-9);
FeasibilityOutcome check_overwritable(const Mac& ch, int user, double tol = 1e-9);
FeasibilityOutcome check_avmac_symmetrizable(const AvMac& ch, AvSymKind kind, double tol = 1e-9);

struct ClassificationReport {
  FeasibilityOutcome spoofable_1, spoofable_2;
  FeasibilityOutcome symmetrizable_1, symmetrizable_2;
  FeasibilityOutcome overwritable_1, overwritable_2;
  bool hierarchy_consistent = true;
  std::string notes;
};

/// Runs all six checks in fixed order (never short-circuits) and verifies the
/// inclusion hierarchy overwritable => spoofable => symmetrizable on every
/// pair of decisive verdicts.
ClassificationReport classify(const Mac& ch, double tol = 1e-9);

/// Constructions behind the hierarchy: given a user-2 overwriting attack and
/// any distribution q_y, builds the pair satisfying the user-2 spoofing
/// condition; given a user-2 spoofing pair, builds the user-2 symmetrizing
/// attack (any fixed x~ column works; we use x~ = 0).
std::pair<Kernel, Kernel> spoof2_pair_from_overwrite(const Mac& ch, const Kernel& p_xprime_xy,
                                                     const DistributionVector& q_y);
Kernel symmetrize2_from_spoof2(const Mac& ch, const Kernel& q_x_xtyt, int xt = 0);

}  // namespace byzmac
