#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "byzmac/errors.hpp"

namespace byzmac {

using Symbol = int;
using Word = std::vector<Symbol>;

/// Two-user discrete memoryless channel W(z|x,y).
struct Mac {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  std::vector<double> w;  // indexed [x][y][z], row-major
  std::string label;

  double operator()(int x, int y, int z) const { return w[(static_cast<size_t>(x) * ny + y) * nz + z]; }
  double& at(int x, int y, int z) { return w[(static_cast<size_t>(x) * ny + y) * nz + z]; }

  /// Channel with the two user inputs exchanged.
  Mac transposed() const;
};

/// State-parameterized family of MACs W(z|x,y,s).
struct AvMac {
  int nx = 0;
  int ny = 0;
  int ns = 0;
  int nz = 0;
  std::vector<double> w;  // indexed [x][y][s][z]
  std::string label;

  double operator()(int x, int y, int s, int z) const {
    return w[((static_cast<size_t>(x) * ny + y) * ns + s) * nz + z];
  }
  double& at(int x, int y, int s, int z) { return w[((static_cast<size_t>(x) * ny + y) * ns + s) * nz + z]; }
};

/// Conditional distribution K(b|a) over finite alphabets. The input may be a
/// tuple (input_shape lists the per-coordinate sizes); an empty input_shape
/// means a single unconditioned distribution row.
struct Kernel {
  std::vector<int> input_shape;
  int output_size = 0;
  std::vector<double> k;  // [flat input][output], row-major

  int input_rows() const {
    int r = 1;
    for (int s : input_shape) r *= s;
    return r;
  }
  int flat_input(const std::vector<int>& in) const {
    int f = 0;
    for (size_t i = 0; i < input_shape.size(); ++i) f = f * input_shape[i] + in[i];
    return f;
  }
  double operator()(int flat_in, int out) const { return k[static_cast<size_t>(flat_in) * output_size + out]; }
  double& at(int flat_in, int out) { return k[static_cast<size_t>(flat_in) * output_size + out]; }

  static Kernel uniform(std::vector<int> input_shape, int output_size);
  static Kernel identity(int alphabet);                 // K(b|a) = 1{b=a}
  static Kernel constant_row(std::vector<int> input_shape, std::vector<double> row);

  /// Largest deviation from row-stochasticity (negative entries count too).
  double stochasticity_deviation() const;
};

/// Probability vector over a finite alphabet.
struct DistributionVector {
  std::vector<double> probs;

  int size() const { return static_cast<int>(probs.size()); }
  void validate(double tol = 1e-12) const;
};

/// Empirical joint distribution of n-length tuples; counts are exact integers.
struct JointType {
  int n = 0;
  std::vector<int> var_sizes;
  std::vector<int64_t> counts;  // dense, row-major over the product alphabet

  size_t cells() const { return counts.size(); }
  int num_vars() const { return static_cast<int>(var_sizes.size()); }
  std::vector<double> probabilities() const;

  /// Marginal type over a subset of coordinates (in the given order).
  JointType marginal(const std::vector<int>& coords) const;
};

// ---- operations ----

Mac validate_mac(int nx, int ny, int nz, const std::vector<double>& table, const std::string& label = "");
void validate_avmac(const AvMac& ch);
void validate_kernel(const Kernel& k, double tol = 1e-12);

/// Channels of the worked examples: "erasure" (Z = X + Y over {0,1,2}),
/// "xor" (Z = X xor Y), "not_xor", and "parallel_ex3"
/// ((Z1,Z2) = (X1+Y1, X2 xor Y2) with 4-ary user inputs and 6-ary output).
Mac builtin_channel(const std::string& name);

/// For parallel_ex3: user symbols are pairs (a1,a2) -> 2*a1+a2 and outputs
/// are pairs (z1,z2) with z1 in {0,1,2}, z2 in {0,1} -> 2*z1+z2.
inline int ex3_input(int a1, int a2) { return 2 * a1 + a2; }
inline int ex3_output(int z1, int z2) { return 2 * z1 + z2; }

double product_channel_prob(const Mac& ch, const Word& x, const Word& y, const Word& z);

JointType joint_type(const std::vector<const Word*>& vectors, const std::vector<int>& var_sizes);
JointType joint_type(const std::vector<Word>& vectors, const std::vector<int>& var_sizes);

}  // namespace byzmac
