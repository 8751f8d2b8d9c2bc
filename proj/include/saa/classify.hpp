#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "saa/presentation.hpp"

namespace saa {

/// Basis-change invariants of an algebra. Isomorphic algebras always agree;
/// the converse holds only once the classification labels are brought in.
struct Fingerprint {
  std::vector<std::size_t> lcs_dims;
  std::vector<std::size_t> ucs_dims;
  std::optional<std::size_t> nil_class;
  std::size_t dim_center = 0;
  bool center_isotropic = false;
  std::size_t dim_l2l2 = 0;
  std::size_t rank = 0;

  bool operator==(const Fingerprint& o) const = default;

  std::string summary() const {
    std::ostringstream os;
    os << "class ";
    if (nil_class)
      os << *nil_class;
    else
      os << "none";
    os << "; lcs";
    for (auto d : lcs_dims) os << ' ' << d;
    os << "; ucs";
    for (auto d : ucs_dims) os << ' ' << d;
    os << "; center " << dim_center << (center_isotropic ? " isotropic" : " non-isotropic");
    os << "; L2L2 " << dim_l2l2 << "; rank " << rank;
    return os.str();
  }
};

inline Fingerprint fingerprint(const Algebra& A) {
  Fingerprint fp;
  std::vector<Subspace> lcs = lower_central_series(A);
  Subspace l2 = lcs.size() > 1 ? lcs[1] : Subspace::zero(A.field(), A.dim());
  for (const Subspace& t : lcs) {
    fp.lcs_dims.push_back(t.dim());
    fp.ucs_dims.push_back(2 * A.half_dim() - t.dim());  // dual terms
  }
  fp.nil_class = class_from_lcs(lcs);
  Subspace z = perp(l2);
  fp.dim_center = z.dim();
  fp.center_isotropic = is_isotropic(z);
  fp.dim_l2l2 = subspace_product(A, l2, l2).dim();
  fp.rank = A.dim() - l2.dim();
  return fp;
}

/// Isomorphism-class label for nilpotent algebras of dimension at most 8.
/// Lr carries the canonical cube-coset representative of its parameter.
struct ClassLabel {
  enum class Tag { Abelian, N6, L2, L3, Lr } tag;
  std::uint32_t param = 0;  // dimension for Abelian, coset representative for Lr

  bool operator==(const ClassLabel& o) const = default;
  bool operator<(const ClassLabel& o) const {
    if (tag != o.tag) return tag < o.tag;
    return param < o.param;
  }

  std::string str() const {
    switch (tag) {
      case Tag::Abelian: return "Abelian(" + std::to_string(param) + ")";
      case Tag::N6: return "N6";
      case Tag::L2: return "L2";
      case Tag::L3: return "L3";
      case Tag::Lr: return "Lr(" + std::to_string(param) + ")";
    }
    return "?";
  }
};

struct Unsupported : Error {
  using Error::Error;
};

namespace detail {

/// The parameter r of the maximal-class family member isomorphic to A
/// (dim 8, two-dimensional centre), normalised along the classification's
/// basis moves: adapt a standard basis to the forced ideal chain, send
/// x1 y2 to x4 and y1 y2 to x3, then cancel the three residual triples.
/// The result is the exact presentation (x2 y3, y4) = r, (x1 y2, y4) = 1,
/// (y1 y2, y3) = 1.
inline std::uint32_t maximal_class_parameter(const Algebra& A, const Subspace& z) {
  const PrimeField& f = A.field();
  ExtractedPresentation ex = extract_with_chain(A, isotropic_chain_unchecked(A, z));
  Algebra cur = transform(A, ex.basis);
  std::size_t d = 8;
  // x1 y2 and y1 y2 lie in the centre span(x4, x3) and are independent.
  const std::uint32_t* u = cur.basis_product(x_index(1), y_index(2));
  const std::uint32_t* w = cur.basis_product(y_index(1), y_index(2));
  for (std::size_t k = 0; k < d; ++k)
    if (k != x_index(3) && k != x_index(4) && (u[k] != 0 || w[k] != 0))
      throw Error("classification: x1y2, y1y2 are not central");
  std::uint32_t m11 = u[x_index(4)], m12 = u[x_index(3)];
  std::uint32_t m21 = w[x_index(4)], m22 = w[x_index(3)];
  std::uint32_t det = f.sub(f.mul(m11, m22), f.mul(m12, m21));
  if (det == 0) throw Error("classification: x1y2, y1y2 are dependent");
  // Dual 2x2 block for (y4, y3) so the new basis stays standard:
  // C = (M^T)^{-1}.
  std::uint32_t di = f.inv(det);
  std::uint32_t c11 = f.mul(m22, di), c12 = f.neg(f.mul(m21, di));
  std::uint32_t c21 = f.neg(f.mul(m12, di)), c22 = f.mul(m11, di);
  MatFp s2 = MatFp::identity(f, d);
  s2.at(x_index(4), x_index(4)) = m11;
  s2.at(x_index(4), x_index(3)) = m12;
  s2.at(x_index(3), x_index(4)) = m21;
  s2.at(x_index(3), x_index(3)) = m22;
  s2.at(y_index(4), y_index(4)) = c11;
  s2.at(y_index(4), y_index(3)) = c12;
  s2.at(y_index(3), y_index(4)) = c21;
  s2.at(y_index(3), y_index(3)) = c22;
  cur = transform(cur, s2);
  // Residual triples beyond P(r): (x1 y3, y4), (y1 y3, y4), (y2 y3, y4).
  std::uint32_t r = cur.form().phi(3, 6, 8);   // (x2 y3, y4)
  std::uint32_t av = cur.form().phi(1, 6, 8);  // (x1 y3, y4)
  std::uint32_t bv = cur.form().phi(2, 6, 8);  // (y1 y3, y4)
  std::uint32_t cv = cur.form().phi(4, 6, 8);  // (y2 y3, y4)
  if (r == 0) throw Error("classification: (x2 y3, y4) vanished in maximal class");
  std::uint32_t a = f.div(av, r);
  std::uint32_t b = f.div(bv, r);
  std::uint32_t c = f.div(f.sub(f.add(cv, f.mul(a, bv)), f.mul(b, av)), r);
  MatFp s3 = MatFp::identity(f, d);
  s3.at(x_index(1), x_index(2)) = f.neg(a);  // x1 -> x1 - a x2
  s3.at(y_index(1), x_index(2)) = f.neg(b);  // y1 -> y1 - b x2
  s3.at(y_index(2), y_index(1)) = a;         // y2 -> y2 + a y1 - b x1 - c x2
  s3.at(y_index(2), x_index(1)) = f.neg(b);
  s3.at(y_index(2), x_index(2)) = f.neg(c);
  cur = transform(cur, s3);
  TernaryForm expected(f, 4);
  expected.set(3, 6, 8, r);
  expected.set(1, 4, 8, 1);
  expected.set(2, 4, 6, 1);
  if (cur.form() != expected)
    throw Error("classification: normalisation did not reach the P(r) shape");
  return r;
}

}  // namespace detail

/// Complete classification in dimensions 2, 4, 6, 8. The dimension-8 branch
/// follows the centre: dim 8 abelian, dim 5 the direct sum L2, dim 3 the
/// algebra L3, dim 2 the maximal-class family Lr up to cube cosets. Other
/// centre dimensions cannot occur.
inline ClassLabel classify_small(const Algebra& A) {
  std::size_t dim = A.dim();
  if (dim < 2 || dim > 8) throw Unsupported("classification supports dimensions 2..8 only");
  std::vector<Subspace> lcs = lower_central_series(A);
  std::optional<std::size_t> cls = class_from_lcs(lcs);
  if (!cls) throw DomainError("classification requires a nilpotent algebra");
  if (*cls <= 1) return ClassLabel{ClassLabel::Tag::Abelian, static_cast<std::uint32_t>(dim)};
  if (dim <= 4) throw Error("classification: non-abelian nilpotent algebra of dimension <= 4");
  if (dim == 6) return ClassLabel{ClassLabel::Tag::N6, 0};
  Subspace z = perp(lcs[1]);  // Z(L) = (L^2)^perp
  switch (z.dim()) {
    case 5:
      if (is_isotropic(z)) throw Error("classification: five-dimensional isotropic centre");
      return ClassLabel{ClassLabel::Tag::L2, 0};
    case 3:
      return ClassLabel{ClassLabel::Tag::L3, 0};
    case 2:
      return ClassLabel{ClassLabel::Tag::Lr,
                        cube_coset_rep(A.field(), detail::maximal_class_parameter(A, z))};
    default:
      throw Error("classification: impossible centre dimension " + std::to_string(z.dim()));
  }
}

// ---------------------------------------------------------------------------
// Enumeration of nilpotent presentations and the census.
// ---------------------------------------------------------------------------

/// All p^(2 C(n,3)) nilpotent presentations in lexicographic order: alpha
/// values over sorted keys, then beta values, the first coordinate most
/// significant. Shardable and resumable through the index decoding.
class PresentationSpace {
 public:
  PresentationSpace(std::size_t n, const PrimeField& f)
      : f_(f), n_(n), keys_(NilpotentPresentation::sorted_keys(n)) {
    std::uint64_t total = 1;
    const std::uint64_t cap = UINT64_MAX;
    for (std::size_t t = 0; t < 2 * keys_.size(); ++t) {
      if (total > cap / f_.p()) throw DomainError("presentation space exceeds 2^64");
      total *= f_.p();
    }
    total_ = total;
  }

  std::uint64_t size() const { return total_; }
  const PrimeField& field() const { return f_; }
  std::size_t half_dim() const { return n_; }

  NilpotentPresentation at(std::uint64_t index) const {
    if (index >= total_) throw DomainError("presentation index out of range");
    NilpotentPresentation p(f_, n_);
    std::size_t m = keys_.size();
    std::uint64_t rest = index;
    std::uint64_t place = total_;
    for (std::size_t t = 0; t < 2 * m; ++t) {
      place /= f_.p();
      auto digit = static_cast<std::uint32_t>(rest / place);
      rest %= place;
      const Triple& k = keys_[t % m];
      if (digit != 0) {
        if (t < m)
          p.set_alpha(k[0], k[1], k[2], digit);
        else
          p.set_beta(k[0], k[1], k[2], digit);
      }
    }
    return p;
  }

 private:
  PrimeField f_;
  std::size_t n_;
  std::vector<Triple> keys_;
  std::uint64_t total_;
};

constexpr std::uint64_t kDefaultCensusBudget = 1u << 24;

/// Enumerates every presentation within the budget; errors otherwise with
/// the budget that would be required.
inline PresentationSpace enumerate_presentations(std::size_t n, const PrimeField& f,
                                                 std::uint64_t budget = kDefaultCensusBudget) {
  PresentationSpace space(n, f);
  if (space.size() > budget)
    throw DomainError("presentation space needs a budget of " + std::to_string(space.size()) +
                      " (configured: " + std::to_string(budget) + ")");
  return space;
}

struct CensusRow {
  ClassLabel label;
  std::uint64_t count = 0;
  std::uint64_t first_index = 0;  // representative: first presentation in order
  std::optional<NilpotentPresentation> rep;
  Fingerprint fp;
};

struct CensusReport {
  std::size_t n = 0;
  std::uint32_t p = 0;
  std::uint64_t total = 0;
  std::vector<CensusRow> rows;  // sorted by label
};

/// Classify every enumerated presentation and group by label. The job count
/// only shards the index range; the merged report is independent of it.
inline CensusReport census(std::size_t n, const PrimeField& f, unsigned jobs = 1,
                           std::uint64_t budget = kDefaultCensusBudget) {
  if (n > 4) throw Unsupported("census requires n <= 4 (classification coverage)");
  PresentationSpace space = enumerate_presentations(n, f, budget);
  std::uint64_t total = space.size();
  if (jobs == 0) jobs = 1;
  if (jobs > total) jobs = static_cast<unsigned>(total);

  using Acc = std::map<ClassLabel, std::pair<std::uint64_t, std::uint64_t>>;  // count, first
  std::vector<Acc> parts(jobs);
  auto work = [&](unsigned w) {
    std::uint64_t lo = total * w / jobs, hi = total * (w + 1) / jobs;
    Acc& acc = parts[w];
    for (std::uint64_t i = lo; i < hi; ++i) {
      Algebra a = build_algebra(space.at(i), false);  // class checked below
      ClassLabel label = classify_small(a);
      auto [it, fresh] = acc.try_emplace(label, 0, i);
      ++it->second.first;
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  Acc merged;
  for (const Acc& part : parts)
    for (const auto& [label, cf] : part) {
      auto [it, fresh] = merged.try_emplace(label, 0, cf.second);
      it->second.first += cf.first;
      if (cf.second < it->second.second) it->second.second = cf.second;
    }

  CensusReport report;
  report.n = n;
  report.p = f.p();
  report.total = total;
  for (const auto& [label, cf] : merged) {
    CensusRow row;
    row.label = label;
    row.count = cf.first;
    row.first_index = cf.second;
    row.rep = space.at(cf.second);
    row.fp = fingerprint(build_algebra(*row.rep, false));
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Brute-force isomorphism oracle.
// ---------------------------------------------------------------------------

enum class IsoVerdict { yes, no, budget_exceeded };

struct IsoResult {
  IsoVerdict verdict;
  std::optional<MatFp> witness;  // rows: images of B's standard basis inside A
  std::uint64_t explored = 0;
};

namespace detail {

struct PackedKey {
  std::array<std::uint64_t, 4> w{};
  bool operator==(const PackedKey& o) const = default;
};

struct PackedKeyHash {
  std::size_t operator()(const PackedKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : k.w) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h);
  }
};

inline unsigned bits_for(std::uint32_t p) {
  unsigned b = 0;
  for (std::uint32_t v = p - 1; v != 0; v >>= 1) ++b;
  return b == 0 ? 1 : b;
}

inline PackedKey pack_matrix(const MatFp& m, unsigned bits) {
  PackedKey k;
  std::size_t pos = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::uint64_t v = m.at(r, c);
      std::size_t word = pos / 64, off = pos % 64;
      k.w[word] |= v << off;
      if (off + bits > 64 && word + 1 < 4) k.w[word + 1] |= v >> (64 - off);
      pos += bits;
    }
  return k;
}

inline MatFp unpack_matrix(const PackedKey& k, const PrimeField& f, std::size_t d,
                           unsigned bits) {
  MatFp m(f, d, d);
  std::uint64_t mask = (bits >= 64) ? ~0ULL : ((1ULL << bits) - 1);
  std::size_t pos = 0;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t word = pos / 64, off = pos % 64;
      std::uint64_t v = k.w[word] >> off;
      if (off + bits > 64 && word + 1 < 4) v |= k.w[word + 1] << (64 - off);
      m.at(r, c) = static_cast<std::uint32_t>(v & mask);
      pos += bits;
    }
  return m;
}

/// Monomial symplectic maps: pair permutation, optional in-pair swap, and a
/// scaling per pair. Catches the scaling witnesses of the L(r) family long
/// before a transvection closure could reach them.
inline void for_each_monomial_symplectic(const PrimeField& f, std::size_t n,
                                         const std::function<bool(const MatFp&)>& visit) {
  std::size_t d = 2 * n;
  std::vector<std::size_t> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
  do {
    // Per pair: swap flag and a unit scaling, iterated as an odometer.
    std::vector<std::uint32_t> scale(n, 1);
    std::vector<bool> swap(n, false);
    for (;;) {
      MatFp m(f, d, d);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = sigma[i];
        std::uint32_t c = scale[i], ci = f.inv(c);
        if (!swap[i]) {
          m.at(2 * i, 2 * j) = c;           // x_{i+1} -> c x_{j+1}
          m.at(2 * i + 1, 2 * j + 1) = ci;  // y_{i+1} -> (1/c) y_{j+1}
        } else {
          m.at(2 * i, 2 * j + 1) = c;            // x -> c y
          m.at(2 * i + 1, 2 * j) = f.neg(ci);    // y -> -(1/c) x
        }
      }
      if (visit(m)) return;
      std::size_t t = 0;
      for (; t < n; ++t) {
        if (!swap[t]) { swap[t] = true; break; }
        swap[t] = false;
        if (scale[t] + 1 < f.p()) { ++scale[t]; break; }
        scale[t] = 1;
      }
      if (t == n) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

}  // namespace detail

/// Searches for a symplectic basis change carrying A onto B: first the
/// deterministic monomial family, then breadth-first closure of the
/// transvection generators, memoising packed matrix encodings. The closure
/// is exact for groups that fit the budget (all of Sp(6,2) does); otherwise
/// the verdict is budget_exceeded rather than a claimed "no".
inline IsoResult brute_force_isomorphic(const Algebra& A, const Algebra& B,
                                        std::uint64_t budget = 2'000'000) {
  if (A.field() != B.field() || A.dim() != B.dim())
    throw DomainError("isomorphism oracle requires a common field and dimension");
  const PrimeField& f = A.field();
  std::size_t d = A.dim(), n = A.half_dim();
  IsoResult result{IsoVerdict::budget_exceeded, std::nullopt, 0};

  // Target values over all sorted triples, for cheap early-exit comparison.
  std::vector<std::uint32_t> target;
  for (std::uint32_t a = 1; a <= d; ++a)
    for (std::uint32_t b = a + 1; b <= d; ++b)
      for (std::uint32_t c = b + 1; c <= d; ++c) target.push_back(B.form().phi(a, b, c));

  auto verify_witness = [&](const MatFp& s) {
    if (!is_symplectic(s)) return false;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const std::uint32_t* zb = B.basis_product(a, b);
        Coeffs mapped(d, 0);  // image of e_a e_b
        for (std::size_t k = 0; k < d; ++k) {
          if (zb[k] == 0) continue;
          for (std::size_t c = 0; c < d; ++c)
            mapped[c] = f.add(mapped[c], f.mul(zb[k], s.at(k, c)));
        }
        if (A.multiply(s.row_vec(a), s.row_vec(b)) != mapped) return false;
      }
    return true;
  };
  std::vector<Coeffs> rows(d);
  auto try_candidate = [&](const MatFp& s) {
    ++result.explored;
    for (std::size_t r = 0; r < d; ++r) rows[r] = s.row_vec(r);
    std::size_t t = 0;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b)
        for (std::size_t c = b + 1; c < d; ++c)
          if (A.phi(rows[a], rows[b], rows[c]) != target[t++]) return false;
    if (!verify_witness(s)) throw Error("isomorphism oracle: witness failed verification");
    result.verdict = IsoVerdict::yes;
    result.witness = s;
    return true;
  };

  detail::for_each_monomial_symplectic(f, n, [&](const MatFp& m) {
    return result.explored >= budget || try_candidate(m);
  });
  if (result.verdict == IsoVerdict::yes) return result;
  if (result.explored >= budget) return result;

  unsigned bits = detail::bits_for(f.p());
  if (bits * d * d > 256) return result;  // encoding cap: refuse gracefully

  // Projective representatives of the transvection directions; the matrices
  // themselves are applied lazily as rank-one updates.
  std::vector<Coeffs> dirs;
  for (std::size_t i = 0; i < d; ++i) {
    Coeffs u(d, 0);
    u[i] = 1;
    std::function<void(std::size_t)> fill = [&](std::size_t j) {
      if (j == d) {
        dirs.push_back(u);
        return;
      }
      for (std::uint32_t x = 0; x < f.p(); ++x) {
        u[j] = x;
        fill(j + 1);
      }
      u[j] = 0;
    };
    fill(i + 1);
  }

  std::vector<detail::PackedKey> elements;
  std::unordered_set<detail::PackedKey, detail::PackedKeyHash> seen;
  elements.push_back(detail::pack_matrix(MatFp::identity(f, d), bits));
  seen.insert(elements.back());
  bool complete = true;
  MatFp child(f, d, d);
  for (std::size_t qi = 0; qi < elements.size() && complete; ++qi) {
    MatFp m = detail::unpack_matrix(elements[qi], f, d, bits);
    if (try_candidate(m)) return result;
    if (result.explored >= budget) return result;
    for (const Coeffs& v : dirs) {
      // T_{v,lam} m = m + lam * (e_i, v) outer (v m); one shared row product.
      Coeffs vm(d, 0);
      for (std::size_t k = 0; k < d; ++k) {
        if (v[k] == 0) continue;
        for (std::size_t c = 0; c < d; ++c)
          vm[c] = f.add(vm[c], f.mul(v[k], m.at(k, c)));
      }
      Coeffs pairing(d);
      for (std::size_t i = 0; i < d; ++i)
        pairing[i] = i % 2 == 0 ? v[i + 1] : f.neg(v[i - 1]);  // (e_i, v)
      for (std::uint32_t lam = 1; lam < f.p() && complete; ++lam) {
        if (elements.size() >= budget) {
          complete = false;
          break;
        }
        for (std::size_t i = 0; i < d; ++i) {
          std::uint32_t s = f.mul(lam, pairing[i]);
          for (std::size_t c = 0; c < d; ++c)
            child.at(i, c) = f.add(m.at(i, c), f.mul(s, vm[c]));
        }
        detail::PackedKey key = detail::pack_matrix(child, bits);
        if (seen.insert(key).second) elements.push_back(key);
      }
      if (!complete) break;
    }
  }
  if (!complete) return result;  // capped closure: inconclusive
  result.verdict = IsoVerdict::no;
  return result;
}

}  // namespace saa
