#pragma once

#include <vector>

#include "byzmac/mac.hpp"

namespace byzmac {

/// KL divergence result in bits. Infinite divergence is carried as a flag, so
/// it never enters floating-point comparisons as an IEEE infinity.
struct Divergence {
  bool finite = true;
  double bits = 0.0;

  bool leq(double threshold) const { return finite && bits <= threshold; }
};

/// D(P||Q) in bits over a shared finite alphabet, with 0*log(0/q) = 0.
Divergence divergence(const std::vector<double>& p, const std::vector<double>& q);
Divergence divergence(const JointType& p, const std::vector<double>& q);

double entropy_bits(const std::vector<double>& p);

/// Conditional mutual information I(A;B|C) in bits of a joint distribution
/// given as probabilities over the product alphabet var_sizes. Coordinate
/// groups must be disjoint; C may be empty.
double mutual_information(const std::vector<double>& probs, const std::vector<int>& var_sizes,
                          const std::vector<int>& group_a, const std::vector<int>& group_b,
                          const std::vector<int>& given = {});
double mutual_information(const JointType& joint, const std::vector<int>& group_a,
                          const std::vector<int>& group_b, const std::vector<int>& given = {});

double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

/// D(P_XYZ || P_X P_Y W) in bits for an empirical type over (X,Y,Z).
/// This is the typicality measure used by the decoders.
Divergence divergence_vs_channel(const JointType& xyz, const Mac& ch);

/// log2 of the exact type-class size n! / prod(counts!).
double log2_type_class_size(const JointType& t);

}  // namespace byzmac
