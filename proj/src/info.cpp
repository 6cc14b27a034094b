#include "byzmac/info.hpp"

#include <cmath>

namespace byzmac {

namespace {

inline double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

// Entropy of a marginal of `probs` over the coordinate subset `coords`.
double marginal_entropy(const std::vector<double>& probs, const std::vector<int>& var_sizes,
                        const std::vector<int>& coords) {
  if (coords.empty()) return 0.0;
  size_t cells = 1;
  for (int c : coords) cells *= var_sizes[c];
  std::vector<double> m(cells, 0.0);
  const int k = static_cast<int>(var_sizes.size());
  std::vector<int> idx(k, 0);
  for (size_t flat = 0; flat < probs.size(); ++flat) {
    if (probs[flat] != 0.0) {
      size_t mf = 0;
      for (int c : coords) mf = mf * var_sizes[c] + idx[c];
      m[mf] += probs[flat];
    }
    for (int j = k - 1; j >= 0; --j) {
      if (++idx[j] < var_sizes[j]) break;
      idx[j] = 0;
    }
  }
  double h = 0;
  for (double v : m) h -= xlog2x(v);
  return h;
}

}  // namespace

Divergence divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size())
    throw Error(Errc::AlphabetMismatch, "divergence: alphabets of size " + std::to_string(p.size()) +
                                            " and " + std::to_string(q.size()));
  Divergence d;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    if (q[i] <= 0) {
      d.finite = false;
      d.bits = 0;
      return d;
    }
    d.bits += p[i] * std::log2(p[i] / q[i]);
  }
  if (d.bits < 0) d.bits = 0;  // rounding guard; KL is nonnegative
  return d;
}

Divergence divergence(const JointType& p, const std::vector<double>& q) {
  return divergence(p.probabilities(), q);
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0;
  for (double v : p) h -= xlog2x(v);
  return h;
}

double mutual_information(const std::vector<double>& probs, const std::vector<int>& var_sizes,
                          const std::vector<int>& group_a, const std::vector<int>& group_b,
                          const std::vector<int>& given) {
  std::vector<char> seen(var_sizes.size(), 0);
  for (const auto* g : {&group_a, &group_b, &given})
    for (int c : *g) {
      if (c < 0 || c >= static_cast<int>(var_sizes.size()))
        throw Error(Errc::ShapeMismatch, "mutual_information: coordinate out of range");
      if (seen[c]++) throw Error(Errc::OverlappingGroups, "coordinate " + std::to_string(c) + " repeated");
    }

  // I(A;B|C) = H(A,C) + H(B,C) - H(C) - H(A,B,C)
  std::vector<int> ac = group_a, bc = group_b, abc = group_a;
  ac.insert(ac.end(), given.begin(), given.end());
  bc.insert(bc.end(), given.begin(), given.end());
  abc.insert(abc.end(), group_b.begin(), group_b.end());
  abc.insert(abc.end(), given.begin(), given.end());
  double i = marginal_entropy(probs, var_sizes, ac) + marginal_entropy(probs, var_sizes, bc) -
             marginal_entropy(probs, var_sizes, given) - marginal_entropy(probs, var_sizes, abc);
  return i < 0 ? 0.0 : i;
}

double mutual_information(const JointType& joint, const std::vector<int>& group_a,
                          const std::vector<int>& group_b, const std::vector<int>& given) {
  return mutual_information(joint.probabilities(), joint.var_sizes, group_a, group_b, given);
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw Error(Errc::AlphabetMismatch, "tv_distance: alphabet mismatch");
  double s = 0;
  for (size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

Divergence divergence_vs_channel(const JointType& xyz, const Mac& ch) {
  if (xyz.num_vars() != 3 || xyz.var_sizes[0] != ch.nx || xyz.var_sizes[1] != ch.ny ||
      xyz.var_sizes[2] != ch.nz)
    throw Error(Errc::AlphabetMismatch, "divergence_vs_channel: type/channel alphabet mismatch");

  // D(P_XYZ || P_X P_Y W) computed directly from counts.
  std::vector<double> px(ch.nx, 0.0), py(ch.ny, 0.0);
  for (int x = 0; x < ch.nx; ++x)
    for (int y = 0; y < ch.ny; ++y)
      for (int z = 0; z < ch.nz; ++z) {
        double c = static_cast<double>(xyz.counts[(static_cast<size_t>(x) * ch.ny + y) * ch.nz + z]);
        px[x] += c;
        py[y] += c;
      }
  const double n = xyz.n;
  Divergence d;
  for (int x = 0; x < ch.nx; ++x)
    for (int y = 0; y < ch.ny; ++y)
      for (int z = 0; z < ch.nz; ++z) {
        int64_t c = xyz.counts[(static_cast<size_t>(x) * ch.ny + y) * ch.nz + z];
        if (c == 0) continue;
        double p = c / n;
        double q = (px[x] / n) * (py[y] / n) * ch(x, y, z);
        if (q <= 0) {
          d.finite = false;
          d.bits = 0;
          return d;
        }
        d.bits += p * std::log2(p / q);
      }
  if (d.bits < 0) d.bits = 0;
  return d;
}

double log2_type_class_size(const JointType& t) {
  double s = std::lgamma(static_cast<double>(t.n) + 1.0);
  for (int64_t c : t.counts) s -= std::lgamma(static_cast<double>(c) + 1.0);
  return s / std::log(2.0);
}

}  // namespace byzmac
