#include <numeric>

#include "byzmac/codec.hpp"

namespace byzmac {

// Hand-built code for the binary erasure MAC: user 1 sends the n weight-1
// strings, user 2 the n weight-(n-1) strings. The decoder reads the output
// sum; extreme sums pin the malicious user outright, the boundary sums are
// resolved by looking for a missing 0 or 2, and sum n decodes the unique
// consistent codeword pair when both a 2 and a 0 are present.
ErasureExampleCode build_erasure_example_code(int n) {
  if (n < 3) throw Error(Errc::ShapeMismatch, "erasure example code needs n >= 3");
  ErasureExampleCode code;
  Codebook& cb = code.cb;
  cb.n = n;
  cb.N1 = cb.N2 = n;
  cb.comp1.probs = {static_cast<double>(n - 1) / n, 1.0 / n};
  cb.comp2.probs = {1.0 / n, static_cast<double>(n - 1) / n};
  for (int m = 0; m < n; ++m) {
    Word e(n, 0), c(n, 1);
    e[m] = 1;
    c[m] = 0;
    cb.words1.push_back(std::move(e));
    cb.words2.push_back(std::move(c));
  }
  cb.validate();
  code.decode = [n](const Word& z) { return erasure_example_decode(n, z); };
  return code;
}

DecoderOutput erasure_example_decode(int n, const Word& z) {
  if (static_cast<int>(z.size()) != n)
    throw Error(Errc::LengthMismatch, "received vector length does not match the blocklength");
  int sum = 0, zeros = 0, twos = 0, pos0 = -1, pos2 = -1;
  for (int t = 0; t < n; ++t) {
    Symbol s = z[t];
    if (s < 0 || s > 2) throw Error(Errc::SymbolOutOfRange, "erasure output symbol out of range");
    sum += s;
    if (s == 0) {
      ++zeros;
      pos0 = t;
    } else if (s == 2) {
      ++twos;
      pos2 = t;
    }
  }

  DecoderOutput o;
  if (sum >= n + 2) {
    o.kind = DecisionKind::Blame1;
  } else if (sum <= n - 2) {
    o.kind = DecisionKind::Blame2;
  } else if (sum == n + 1) {
    o.kind = (zeros == 0) ? DecisionKind::Blame2 : DecisionKind::Blame1;
  } else if (sum == n - 1) {
    o.kind = (twos == 0) ? DecisionKind::Blame1 : DecisionKind::Blame2;
  } else {  // sum == n
    if (twos == 1 && zeros == 1) {
      o.kind = DecisionKind::Pair;
      o.m1 = pos2 + 1;
      o.m2 = pos0 + 1;
    } else {
      o.kind = DecisionKind::Pair;
      o.m1 = o.m2 = 1;
      o.fallback = true;
    }
  }
  return o;
}

}  // namespace byzmac
