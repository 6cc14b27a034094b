#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "byzmac/codec.hpp"
#include "byzmac/rng.hpp"

namespace byzmac {

double pow_count(int alphabet, int n) { return std::pow(static_cast<double>(alphabet), n); }

namespace {

std::vector<int64_t> exact_counts(const DistributionVector& comp, int n) {
  std::vector<int64_t> c(comp.probs.size());
  int64_t total = 0;
  for (size_t k = 0; k < comp.probs.size(); ++k) {
    double want = n * comp.probs[k];
    c[k] = std::llround(want);
    if (std::abs(want - static_cast<double>(c[k])) > 1e-9)
      throw Error(Errc::NonIntegerType, "n * comp(" + std::to_string(k) + ") = " + std::to_string(want) +
                                            " is not an integer");
    total += c[k];
  }
  if (total != n) throw Error(Errc::NonIntegerType, "composition counts sum to " + std::to_string(total));
  return c;
}

std::string word_str(const Word& w) {
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + "]";
}

}  // namespace

void Codebook::validate() const {
  comp1.validate();
  comp2.validate();
  if (n <= 0 || N1 <= 0 || N2 <= 0) throw Error(Errc::ShapeMismatch, "codebook sizes must be positive");
  if (static_cast<int>(words1.size()) != N1 || static_cast<int>(words2.size()) != N2)
    throw Error(Errc::ShapeMismatch, "codeword count does not match N1/N2");
  std::vector<int64_t> want1 = exact_counts(comp1, n), want2 = exact_counts(comp2, n);
  auto check = [&](const std::vector<Word>& words, const std::vector<int64_t>& want, int alphabet,
                   const char* which) {
    for (const Word& w : words) {
      if (static_cast<int>(w.size()) != n) throw Error(Errc::LengthMismatch, "codeword length mismatch");
      std::vector<int64_t> c(alphabet, 0);
      for (Symbol s : w) {
        if (s < 0 || s >= alphabet) throw Error(Errc::SymbolOutOfRange, "codeword symbol out of range");
        ++c[s];
      }
      if (c != want)
        throw Error(Errc::ShapeMismatch, std::string(which) + " codeword " + word_str(w) +
                                             " is not of the declared composition");
    }
  };
  check(words1, want1, comp1.size(), "user-1");
  check(words2, want2, comp2.size(), "user-2");
}

Codebook generate_constant_composition_codebook(const DistributionVector& comp1,
                                                const DistributionVector& comp2, int n, int N1, int N2,
                                                uint64_t seed) {
  if (n <= 0 || N1 < 1 || N2 < 1) throw Error(Errc::ShapeMismatch, "need n > 0 and N1, N2 >= 1");
  comp1.validate();
  comp2.validate();
  std::vector<int64_t> c1 = exact_counts(comp1, n), c2 = exact_counts(comp2, n);

  auto base_word = [n](const std::vector<int64_t>& counts) {
    Word w;
    w.reserve(n);
    for (size_t sym = 0; sym < counts.size(); ++sym)
      w.insert(w.end(), static_cast<size_t>(counts[sym]), static_cast<Symbol>(sym));
    return w;
  };
  Word base1 = base_word(c1), base2 = base_word(c2);

  Codebook cb;
  cb.n = n;
  cb.N1 = N1;
  cb.N2 = N2;
  cb.comp1 = comp1;
  cb.comp2 = comp2;
  cb.words1.reserve(N1);
  cb.words2.reserve(N2);
  for (int m = 0; m < N1; ++m) {
    Word w = base1;
    Rng rng(Rng::derive(seed, 1, static_cast<uint64_t>(m)));
    rng.shuffle(w);
    cb.words1.push_back(std::move(w));
  }
  for (int m = 0; m < N2; ++m) {
    Word w = base2;
    Rng rng(Rng::derive(seed, 2, static_cast<uint64_t>(m)));
    rng.shuffle(w);
    cb.words2.push_back(std::move(w));
  }
  cb.validate();
  return cb;
}

namespace {

struct TypeKey {
  std::vector<int32_t> counts;
  bool operator<(const TypeKey& o) const { return counts < o.counts; }
};

TypeKey key_of(const std::vector<const Word*>& vs, const std::vector<int>& sizes) {
  size_t cells = 1;
  for (int s : sizes) cells *= s;
  TypeKey k;
  k.counts.assign(cells, 0);
  const size_t n = vs[0]->size();
  for (size_t t = 0; t < n; ++t) {
    size_t flat = 0;
    for (size_t j = 0; j < vs.size(); ++j) flat = flat * sizes[j] + (*vs[j])[t];
    ++k.counts[flat];
  }
  return k;
}

double mi_of_key(const TypeKey& k, int n, const std::vector<int>& sizes, const std::vector<int>& ga,
                 const std::vector<int>& gb, const std::vector<int>& gc = {}) {
  JointType jt;
  jt.n = n;
  jt.var_sizes = sizes;
  jt.counts.assign(k.counts.begin(), k.counts.end());
  return mutual_information(jt, ga, gb, gc);
}

struct SideView {
  const std::vector<Word>* wa;
  const std::vector<Word>* wb;
  int na, nb;          // message counts
  int sa, sb;          // alphabet sizes
  double ra, rb;       // rates log2(N)/n
  const char* suffix;  // "" or "q"
};

void audit_side(const SideView& v, int n, double eps, uint64_t budget, std::vector<AuditRecord>& out) {
  const double thr_small = std::exp2(-0.5 * n * eps);
  auto positive_part = [](double x) { return x > 0 ? x : 0.0; };

  auto make_record = [&](const char* name) {
    AuditRecord r;
    r.property = std::string(name) + v.suffix;
    return r;
  };
  auto update = [&](AuditRecord& r, double lhs, double thr, bool active, const std::string& inst) {
    if (!active) return;
    r.vacuous = false;
    double ratio = thr > 0 ? lhs / thr : (lhs > 0 ? 1e300 : 0.0);
    if (ratio > r.worst_ratio) {
      r.worst_ratio = ratio;
      r.worst_lhs = lhs;
      r.worst_threshold = thr;
      r.worst_instance = inst;
    }
  };
  auto finish = [&](AuditRecord& r) {
    r.pass = r.vacuous || r.worst_ratio <= 1.0 + 1e-12;
    out.push_back(r);
  };

  if (pow_count(v.sb, n) > static_cast<double>(budget) ||
      pow_count(v.sa, n) * pow_count(v.sb, n) > static_cast<double>(budget))
    throw Error(Errc::TooLarge, "audit enumeration exceeds the cell budget");

  // (1): single-codeword typicality with an external vector.
  {
    AuditRecord r = make_record("codebook:1");
    std::vector<int> sizes = {v.sa, v.sb};
    for (WordIter it(v.sb, n); !it.done(); it.next()) {
      const Word& ext = it.word();
      std::map<TypeKey, int> cnt;
      for (int m = 0; m < v.na; ++m) ++cnt[key_of({&(*v.wa)[m], &ext}, sizes)];
      for (const auto& [key, c] : cnt) {
        double mi = mi_of_key(key, n, sizes, {0}, {1});
        update(r, static_cast<double>(c) / v.na, thr_small, mi > eps, "ext=" + word_str(ext));
      }
    }
    finish(r);
  }

  // (2b): own message confusable with another own message plus an other-user
  // codeword, against an external vector.
  {
    AuditRecord r = make_record("codebook:2b");
    std::vector<int> sizes = {v.sa, v.sa, v.sb, v.sb};
    for (WordIter it(v.sb, n); !it.done(); it.next()) {
      const Word& ext = it.word();
      std::map<TypeKey, std::vector<char>> who;
      for (int m = 0; m < v.na; ++m)
        for (int mt = 0; mt < v.na; ++mt) {
          if (mt == m) continue;
          for (int mb = 0; mb < v.nb; ++mb) {
            TypeKey key = key_of({&(*v.wa)[m], &(*v.wa)[mt], &(*v.wb)[mb], &ext}, sizes);
            auto& bits = who[key];
            bits.resize(v.na, 0);
            bits[m] = 1;
          }
        }
      for (const auto& [key, bits] : who) {
        int c = 0;
        for (char b : bits) c += b;
        double hyp = mi_of_key(key, n, sizes, {0}, {1, 2, 3}) -
                     positive_part(v.ra - mi_of_key(key, n, sizes, {1}, {2, 3})) -
                     positive_part(v.rb - mi_of_key(key, n, sizes, {2}, {3}));
        update(r, static_cast<double>(c) / v.na, thr_small, hyp > eps, "ext=" + word_str(ext));
      }
    }
    finish(r);
  }

  // (3b): number of cross-user codeword pairs jointly typical with two
  // external vectors.
  {
    AuditRecord r = make_record("codebook:3b");
    std::vector<int> sizes = {v.sa, v.sa, v.sb, v.sb};
    for (WordIter ia(v.sa, n); !ia.done(); ia.next()) {
      const Word& exta = ia.word();
      for (WordIter ib(v.sb, n); !ib.done(); ib.next()) {
        const Word& extb = ib.word();
        std::map<TypeKey, int> cnt;
        for (int mt = 0; mt < v.na; ++mt)
          for (int mb = 0; mb < v.nb; ++mb)
            ++cnt[key_of({&exta, &(*v.wa)[mt], &(*v.wb)[mb], &extb}, sizes)];
        for (const auto& [key, c] : cnt) {
          double thr = std::exp2(n * (positive_part(v.ra - mi_of_key(key, n, sizes, {1}, {2, 0, 3})) +
                                      positive_part(v.rb - mi_of_key(key, n, sizes, {2}, {0, 3})) + eps));
          update(r, static_cast<double>(c), thr, true,
                 "ext_a=" + word_str(exta) + " ext_b=" + word_str(extb));
        }
      }
    }
    finish(r);
  }

  // (4): own message confusable with a pair of other-user codewords.
  {
    AuditRecord r = make_record("codebook:4");
    std::vector<int> sizes = {v.sa, v.sb, v.sb, v.sb};
    for (WordIter it(v.sb, n); !it.done(); it.next()) {
      const Word& ext = it.word();
      std::map<TypeKey, std::vector<char>> who;
      for (int m = 0; m < v.na; ++m)
        for (int m1 = 0; m1 < v.nb; ++m1)
          for (int m2 = 0; m2 < v.nb; ++m2) {
            if (m1 == m2) continue;
            TypeKey key = key_of({&(*v.wa)[m], &(*v.wb)[m1], &(*v.wb)[m2], &ext}, sizes);
            auto& bits = who[key];
            bits.resize(v.na, 0);
            bits[m] = 1;
          }
      for (const auto& [key, bits] : who) {
        int c = 0;
        for (char b : bits) c += b;
        double hyp = mi_of_key(key, n, sizes, {0}, {1, 2, 3}) -
                     positive_part(v.rb - mi_of_key(key, n, sizes, {1}, {3})) -
                     positive_part(v.rb - mi_of_key(key, n, sizes, {2}, {1, 3}));
        update(r, static_cast<double>(c) / v.na, thr_small, hyp > eps, "ext=" + word_str(ext));
      }
    }
    finish(r);
  }

  // (5): number of other-user codeword pairs jointly typical with two
  // external vectors.
  {
    AuditRecord r = make_record("codebook:5");
    std::vector<int> sizes = {v.sa, v.sb, v.sb, v.sb};
    for (WordIter ia(v.sa, n); !ia.done(); ia.next()) {
      const Word& exta = ia.word();
      for (WordIter ib(v.sb, n); !ib.done(); ib.next()) {
        const Word& extb = ib.word();
        std::map<TypeKey, int> cnt;
        for (int m1 = 0; m1 < v.nb; ++m1)
          for (int m2 = 0; m2 < v.nb; ++m2)
            ++cnt[key_of({&exta, &(*v.wb)[m1], &(*v.wb)[m2], &extb}, sizes)];
        for (const auto& [key, c] : cnt) {
          double thr =
              std::exp2(n * (positive_part(v.rb - mi_of_key(key, n, sizes, {1}, {0, 3})) +
                             positive_part(v.rb - mi_of_key(key, n, sizes, {2}, {1, 0, 3})) + eps));
          update(r, static_cast<double>(c), thr, true,
                 "ext_a=" + word_str(exta) + " ext_b=" + word_str(extb));
        }
      }
    }
    finish(r);
  }
}

}  // namespace

std::vector<AuditRecord> audit_codebook(const Codebook& cb, double epsilon, uint64_t cell_budget) {
  cb.validate();
  if (epsilon <= 0) throw Error(Errc::ShapeMismatch, "epsilon must be positive");
  const int s1 = cb.comp1.size(), s2 = cb.comp2.size();
  const double r1 = std::log2(static_cast<double>(cb.N1)) / cb.n;
  const double r2 = std::log2(static_cast<double>(cb.N2)) / cb.n;
  std::vector<AuditRecord> out;
  out.reserve(10);
  audit_side({&cb.words1, &cb.words2, cb.N1, cb.N2, s1, s2, r1, r2, ""}, cb.n, epsilon, cell_budget, out);
  audit_side({&cb.words2, &cb.words1, cb.N2, cb.N1, s2, s1, r2, r1, "q"}, cb.n, epsilon, cell_budget, out);
  return out;
}

}  // namespace byzmac
