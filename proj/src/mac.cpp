#include "byzmac/mac.hpp"

#include <cmath>
#include <numeric>

namespace byzmac {

namespace {
constexpr double kRowSumTol = 1e-9;
}

Mac Mac::transposed() const {
  Mac t;
  t.nx = ny;
  t.ny = nx;
  t.nz = nz;
  t.label = label.empty() ? "" : label + " (transposed)";
  t.w.resize(w.size());
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z) t.at(y, x, z) = (*this)(x, y, z);
  return t;
}

Mac validate_mac(int nx, int ny, int nz, const std::vector<double>& table, const std::string& label) {
  if (nx <= 0 || ny <= 0 || nz <= 0)
    throw Error(Errc::ShapeMismatch, "alphabet sizes must be positive");
  if (table.size() != static_cast<size_t>(nx) * ny * nz)
    throw Error(Errc::ShapeMismatch, "table has " + std::to_string(table.size()) + " entries, expected " +
                                         std::to_string(static_cast<size_t>(nx) * ny * nz));
  for (double v : table)
    if (v < 0) throw Error(Errc::NegativeEntry, "channel entry " + std::to_string(v));
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      double s = 0;
      for (int z = 0; z < nz; ++z) s += table[(static_cast<size_t>(x) * ny + y) * nz + z];
      if (std::abs(s - 1.0) > kRowSumTol)
        throw Error(Errc::NonStochastic, "row (x=" + std::to_string(x) + ",y=" + std::to_string(y) +
                                             ") sums to " + std::to_string(s));
    }
  }
  Mac ch;
  ch.nx = nx;
  ch.ny = ny;
  ch.nz = nz;
  ch.w = table;
  ch.label = label;
  return ch;
}

void validate_avmac(const AvMac& ch) {
  if (ch.nx <= 0 || ch.ny <= 0 || ch.ns <= 0 || ch.nz <= 0)
    throw Error(Errc::ShapeMismatch, "alphabet and state sizes must be positive");
  if (ch.w.size() != static_cast<size_t>(ch.nx) * ch.ny * ch.ns * ch.nz)
    throw Error(Errc::ShapeMismatch, "AV-MAC table size mismatch");
  for (double v : ch.w)
    if (v < 0) throw Error(Errc::NegativeEntry, "AV-MAC entry " + std::to_string(v));
  for (int x = 0; x < ch.nx; ++x)
    for (int y = 0; y < ch.ny; ++y)
      for (int s = 0; s < ch.ns; ++s) {
        double sum = 0;
        for (int z = 0; z < ch.nz; ++z) sum += ch(x, y, s, z);
        if (std::abs(sum - 1.0) > kRowSumTol)
          throw Error(Errc::NonStochastic, "AV-MAC row (x,y,s)=(" + std::to_string(x) + "," +
                                               std::to_string(y) + "," + std::to_string(s) + ") sums to " +
                                               std::to_string(sum));
      }
}

void validate_kernel(const Kernel& k, double tol) {
  if (k.output_size <= 0) throw Error(Errc::ShapeMismatch, "kernel output size must be positive");
  if (k.k.size() != static_cast<size_t>(k.input_rows()) * k.output_size)
    throw Error(Errc::ShapeMismatch, "kernel table size mismatch");
  if (k.stochasticity_deviation() > tol)
    throw Error(Errc::NonStochastic, "kernel rows are not stochastic within tolerance");
}

Kernel Kernel::uniform(std::vector<int> input_shape, int output_size) {
  Kernel k;
  k.input_shape = std::move(input_shape);
  k.output_size = output_size;
  k.k.assign(static_cast<size_t>(k.input_rows()) * output_size, 1.0 / output_size);
  return k;
}

Kernel Kernel::identity(int alphabet) {
  Kernel k;
  k.input_shape = {alphabet};
  k.output_size = alphabet;
  k.k.assign(static_cast<size_t>(alphabet) * alphabet, 0.0);
  for (int a = 0; a < alphabet; ++a) k.at(a, a) = 1.0;
  return k;
}

Kernel Kernel::constant_row(std::vector<int> input_shape, std::vector<double> row) {
  Kernel k;
  k.input_shape = std::move(input_shape);
  k.output_size = static_cast<int>(row.size());
  k.k.reserve(static_cast<size_t>(k.input_rows()) * row.size());
  for (int r = 0; r < k.input_rows(); ++r) k.k.insert(k.k.end(), row.begin(), row.end());
  return k;
}

double Kernel::stochasticity_deviation() const {
  double worst = 0;
  for (int r = 0; r < input_rows(); ++r) {
    double s = 0;
    for (int o = 0; o < output_size; ++o) {
      double v = (*this)(r, o);
      if (v < 0) worst = std::max(worst, -v);
      s += v;
    }
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

void DistributionVector::validate(double tol) const {
  double s = 0;
  for (double v : probs) {
    if (v < -tol) throw Error(Errc::NegativeEntry, "distribution entry " + std::to_string(v));
    s += v;
  }
  if (std::abs(s - 1.0) > tol)
    throw Error(Errc::NonStochastic, "distribution sums to " + std::to_string(s));
}

Mac builtin_channel(const std::string& name) {
  if (name == "erasure") {
    Mac ch;
    ch.nx = ch.ny = 2;
    ch.nz = 3;
    ch.label = "binary erasure MAC (Z = X + Y)";
    ch.w.assign(2 * 2 * 3, 0.0);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) ch.at(x, y, x + y) = 1.0;
    return ch;
  }
  if (name == "xor") {
    Mac ch;
    ch.nx = ch.ny = ch.nz = 2;
    ch.label = "binary additive MAC (Z = X xor Y)";
    ch.w.assign(2 * 2 * 2, 0.0);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) ch.at(x, y, x ^ y) = 1.0;
    return ch;
  }
  if (name == "not_xor") {
    Mac ch;
    ch.nx = ch.ny = ch.nz = 2;
    ch.label = "negated binary additive MAC (Z = 1 xor X xor Y)";
    ch.w.assign(2 * 2 * 2, 0.0);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) ch.at(x, y, 1 ^ x ^ y) = 1.0;
    return ch;
  }
  if (name == "parallel_ex3") {
    Mac ch;
    ch.nx = ch.ny = 4;
    ch.nz = 6;
    ch.label = "parallel erasure/xor MAC ((Z1,Z2) = (X1+Y1, X2 xor Y2))";
    ch.w.assign(4 * 4 * 6, 0.0);
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2)
        for (int y1 = 0; y1 < 2; ++y1)
          for (int y2 = 0; y2 < 2; ++y2)
            ch.at(ex3_input(x1, x2), ex3_input(y1, y2), ex3_output(x1 + y1, x2 ^ y2)) = 1.0;
    return ch;
  }
  throw Error(Errc::UnknownChannel, name);
}

double product_channel_prob(const Mac& ch, const Word& x, const Word& y, const Word& z) {
  if (x.size() != y.size() || x.size() != z.size())
    throw Error(Errc::LengthMismatch, "input/output vectors must have equal length");
  double p = 1.0;
  for (size_t t = 0; t < x.size(); ++t) {
    if (x[t] < 0 || x[t] >= ch.nx || y[t] < 0 || y[t] >= ch.ny || z[t] < 0 || z[t] >= ch.nz)
      throw Error(Errc::SymbolOutOfRange, "symbol out of range at position " + std::to_string(t));
    p *= ch(x[t], y[t], z[t]);
  }
  return p;
}

std::vector<double> JointType::probabilities() const {
  std::vector<double> p(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) p[i] = static_cast<double>(counts[i]) / n;
  return p;
}

JointType JointType::marginal(const std::vector<int>& coords) const {
  JointType m;
  m.n = n;
  m.var_sizes.reserve(coords.size());
  for (int c : coords) m.var_sizes.push_back(var_sizes[c]);
  size_t mcells = 1;
  for (int s : m.var_sizes) mcells *= s;
  m.counts.assign(mcells, 0);

  const int k = num_vars();
  std::vector<int> idx(k, 0);
  for (size_t flat = 0; flat < counts.size(); ++flat) {
    if (counts[flat] != 0) {
      size_t mf = 0;
      for (size_t j = 0; j < coords.size(); ++j) mf = mf * m.var_sizes[j] + idx[coords[j]];
      m.counts[mf] += counts[flat];
    }
    for (int j = k - 1; j >= 0; --j) {
      if (++idx[j] < var_sizes[j]) break;
      idx[j] = 0;
    }
  }
  return m;
}

JointType joint_type(const std::vector<const Word*>& vectors, const std::vector<int>& var_sizes) {
  if (vectors.empty() || vectors.size() != var_sizes.size())
    throw Error(Errc::ShapeMismatch, "joint_type: one alphabet size per vector required");
  const size_t n = vectors[0]->size();
  for (const Word* v : vectors)
    if (v->size() != n) throw Error(Errc::LengthMismatch, "joint_type: vectors have unequal lengths");

  JointType t;
  t.n = static_cast<int>(n);
  t.var_sizes = var_sizes;
  size_t cells = 1;
  for (int s : var_sizes) cells *= s;
  t.counts.assign(cells, 0);
  for (size_t pos = 0; pos < n; ++pos) {
    size_t flat = 0;
    for (size_t j = 0; j < vectors.size(); ++j) {
      Symbol a = (*vectors[j])[pos];
      if (a < 0 || a >= var_sizes[j])
        throw Error(Errc::SymbolOutOfRange, "joint_type: symbol out of range");
      flat = flat * var_sizes[j] + a;
    }
    ++t.counts[flat];
  }
  return t;
}

JointType joint_type(const std::vector<Word>& vectors, const std::vector<int>& var_sizes) {
  std::vector<const Word*> ptrs;
  ptrs.reserve(vectors.size());
  for (const Word& v : vectors) ptrs.push_back(&v);
  return joint_type(ptrs, var_sizes);
}

}  // namespace byzmac
