#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "saa/linalg.hpp"

namespace saa {

using Triple = std::array<std::uint32_t, 3>;

/// Alternating trilinear form on F^{2n}, stored sparsely: values on strictly
/// sorted basis triples (1-based global indices), extended to arbitrary index
/// order by total antisymmetry. Zero entries are omitted.
class TernaryForm {
 public:
  TernaryForm(const PrimeField& f, std::size_t n) : f_(f), n_(n) {}

  const PrimeField& field() const { return f_; }
  std::size_t half_dim() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  const std::map<Triple, std::uint32_t>& entries() const { return vals_; }

  void set(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t v) {
    if (!(1 <= a && a < b && b < c && c <= dim()))
      throw DomainError("ternary form indices must satisfy 1 <= a < b < c <= 2n");
    v %= f_.p();
    if (v == 0)
      vals_.erase({a, b, c});
    else
      vals_[{a, b, c}] = v;
  }

  /// gamma_{abc} for arbitrary distinct 1-based indices (0 on repeats).
  std::uint32_t phi(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    if (a == b || b == c || a == c) return 0;
    bool neg = false;
    if (a > b) { std::swap(a, b); neg = !neg; }
    if (b > c) { std::swap(b, c); neg = !neg; }
    if (a > b) { std::swap(a, b); neg = !neg; }
    auto it = vals_.find({a, b, c});
    if (it == vals_.end()) return 0;
    return neg ? f_.neg(it->second) : it->second;
  }

  bool operator==(const TernaryForm& o) const {
    return f_ == o.f_ && n_ == o.n_ && vals_ == o.vals_;
  }
  bool operator!=(const TernaryForm& o) const { return !(*this == o); }

 private:
  PrimeField f_;
  std::size_t n_;
  std::map<Triple, std::uint32_t> vals_;
};

/// Checks a candidate basis-product table against the form: the pairings
/// (e_a e_b, e_c) must equal the fully antisymmetric extension of the stored
/// values on every ordered triple. That single condition pins the table
/// entries (the form is non-degenerate) and carries total antisymmetry, the
/// cyclic identity (uv, w) = (vw, u) and self-adjointness with it. The table
/// is flat, entry (a, b) at offset (a*2n + b)*2n, 0-based.
inline bool audit_product_table(const TernaryForm& form, const Coeffs& table) {
  const PrimeField& f = form.field();
  std::size_t d = form.dim();
  Coeffs dense(d * d * d, 0);
  auto put = [&](std::size_t a, std::size_t b, std::size_t c, std::uint32_t v) {
    dense[(a * d + b) * d + c] = v;
  };
  for (const auto& [t, g] : form.entries()) {
    std::size_t a = t[0] - 1, b = t[1] - 1, c = t[2] - 1;
    std::uint32_t ng = f.neg(g);
    put(a, b, c, g);
    put(b, c, a, g);
    put(c, a, b, g);
    put(b, a, c, ng);
    put(a, c, b, ng);
    put(c, b, a, ng);
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const std::uint32_t* z = table.data() + (a * d + b) * d;
      for (std::size_t c = 0; c < d; ++c) {
        std::uint32_t pairing = c % 2 == 0 ? f.neg(z[c + 1]) : z[c - 1];  // (z, e_c)
        if (pairing != dense[(a * d + b) * d + c]) return false;
      }
    }
  return true;
}

/// A symplectic alternating algebra of dimension 2n over GF(p): the standard
/// symplectic form together with the product induced by a ternary form.
/// Immutable after construction.
class Algebra {
 public:
  explicit Algebra(TernaryForm form)
      : f_(form.field()), n_(form.half_dim()), form_(std::move(form)) {
    std::size_t d = dim();
    table_.assign(d * d * d, 0);
    Coeffs ea(d, 0), eb(d, 0);
    for (std::size_t a = 0; a < d; ++a) {
      ea[a] = 1;
      for (std::size_t b = a + 1; b < d; ++b) {
        eb[b] = 1;
        std::uint32_t* fwd = &table_[(a * d + b) * d];
        std::uint32_t* rev = &table_[(b * d + a) * d];
        multiply_into(ea.data(), eb.data(), fwd);
        for (std::size_t k = 0; k < d; ++k) rev[k] = f_.neg(fwd[k]);
        eb[b] = 0;
      }
      ea[a] = 0;
    }
    if (!audit_product_table(form_, table_))
      throw Error("algebra construction produced an inconsistent product table");
  }

  const PrimeField& field() const { return f_; }
  std::size_t half_dim() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  const TernaryForm& form() const { return form_; }
  const Coeffs& product_table() const { return table_; }

  bool operator==(const Algebra& o) const {
    return f_ == o.f_ && n_ == o.n_ && form_ == o.form_;
  }
  bool operator!=(const Algebra& o) const { return !(*this == o); }

  /// Trilinear extension phi(u, v, w) = (u v, w).
  std::uint32_t phi(const Coeffs& u, const Coeffs& v, const Coeffs& w) const {
    std::uint32_t acc = 0;
    for (const auto& [t, g] : form_.entries()) {
      std::size_t a = t[0] - 1, b = t[1] - 1, c = t[2] - 1;
      std::uint32_t det = 0;
      det = f_.add(det, f_.mul(u[a], f_.sub(f_.mul(v[b], w[c]), f_.mul(v[c], w[b]))));
      det = f_.sub(det, f_.mul(u[b], f_.sub(f_.mul(v[a], w[c]), f_.mul(v[c], w[a]))));
      det = f_.add(det, f_.mul(u[c], f_.sub(f_.mul(v[a], w[b]), f_.mul(v[b], w[a]))));
      acc = f_.add(acc, f_.mul(g, det));
    }
    return acc;
  }

  /// u v: the unique z with (z, w) = phi(u, v, w) for all w. In the standard
  /// basis the xj-coordinate of z is phi(u, v, yj) and the yj-coordinate is
  /// -phi(u, v, xj). Writes into out (length 2n), returns true if non-zero.
  bool multiply_into(const std::uint32_t* u, const std::uint32_t* v,
                     std::uint32_t* out) const {
    std::size_t d = dim();
    for (std::size_t k = 0; k < d; ++k) out[k] = 0;  // phi(u, v, e_k) first
    for (const auto& [t, g] : form_.entries()) {
      std::size_t a = t[0] - 1, b = t[1] - 1, c = t[2] - 1;
      std::uint32_t mab = f_.sub(f_.mul(u[a], v[b]), f_.mul(u[b], v[a]));
      std::uint32_t mac = f_.sub(f_.mul(u[a], v[c]), f_.mul(u[c], v[a]));
      std::uint32_t mbc = f_.sub(f_.mul(u[b], v[c]), f_.mul(u[c], v[b]));
      out[c] = f_.add(out[c], f_.mul(g, mab));
      out[b] = f_.sub(out[b], f_.mul(g, mac));
      out[a] = f_.add(out[a], f_.mul(g, mbc));
    }
    bool nonzero = false;
    for (std::size_t k = 0; k + 1 < d; k += 2) {
      std::uint32_t px = out[k];           // phi(u, v, x)
      out[k] = out[k + 1];                 // x-coordinate: phi(u, v, y)
      out[k + 1] = f_.neg(px);             // y-coordinate: -phi(u, v, x)
      nonzero = nonzero || out[k] != 0 || out[k + 1] != 0;
    }
    return nonzero;
  }

  Coeffs multiply(const Coeffs& u, const Coeffs& v) const {
    std::size_t d = dim();
    if (u.size() != d || v.size() != d)
      throw DomainError("vector dimension does not match the algebra");
    Coeffs z(d, 0);
    multiply_into(u.data(), v.data(), z.data());
    return z;
  }

  /// Cached e_a e_b, 0-based indices.
  const std::uint32_t* basis_product(std::size_t a, std::size_t b) const {
    return &table_[(a * dim() + b) * dim()];
  }

 private:
  PrimeField f_;
  std::size_t n_;
  TernaryForm form_;
  Coeffs table_;
};

/// Span of { u v : u over a basis of U, v over a basis of V }.
inline Subspace subspace_product(const Algebra& A, const Subspace& u, const Subspace& v) {
  check_same_ambient(u, v);
  std::size_t d = A.dim();
  MatFp m(A.field(), 0, d);
  Coeffs z(d);
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j)
      if (A.multiply_into(u.basis().row(i), v.basis().row(j), z.data()))
        m.append_row(z);
  return Subspace::span(std::move(m));
}

/// L^1 = L, L^{m+1} = L^m L, computed until zero or stable (at most 2n+1
/// terms). The final term is zero iff the algebra is nilpotent.
inline std::vector<Subspace> lower_central_series(const Algebra& A) {
  Subspace full = Subspace::full(A.field(), A.dim());
  std::vector<Subspace> terms{full};
  for (std::size_t step = 0; step < 2 * A.half_dim() + 1; ++step) {
    if (terms.back().dim() == 0) break;
    Subspace next = subspace_product(A, terms.back(), full);
    if (next == terms.back()) break;  // stabilised non-zero: not nilpotent
    terms.push_back(std::move(next));
  }
  return terms;
}

enum class UcsMethod { direct, dual };

/// Upper central series Z_0 = 0, Z_{m+1} = { x : x L <= Z_m }. The direct
/// method stacks the linear maps v -> v e_j reduced mod Z_m and takes the
/// kernel; the dual method uses Z_m = (L^{m+1})^perp.
inline std::vector<Subspace> upper_central_series(const Algebra& A,
                                                  UcsMethod method = UcsMethod::dual) {
  const PrimeField& f = A.field();
  std::size_t d = A.dim();
  if (method == UcsMethod::dual) {
    std::vector<Subspace> terms;
    for (const Subspace& lterm : lower_central_series(A)) terms.push_back(perp(lterm));
    return terms;
  }
  std::vector<Subspace> terms{Subspace::zero(f, d)};
  for (std::size_t step = 0; step < 2 * A.half_dim() + 1; ++step) {
    if (terms.back().dim() == d) break;
    const Subspace& zm = terms.back();
    MatFp big(f, d * d, d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        Coeffs w(A.basis_product(k, j), A.basis_product(k, j) + d);
        Coeffs red = zm.reduce(std::move(w));
        for (std::size_t c = 0; c < d; ++c) big.at(j * d + c, k) = red[c];
      }
    }
    Subspace next = kernel(std::move(big));
    if (next == terms.back()) break;
    terms.push_back(std::move(next));
  }
  return terms;
}

struct SeriesReport {
  std::vector<Subspace> lcs;
  std::vector<Subspace> ucs;
  std::optional<std::size_t> nil_class;  // nullopt: not nilpotent
  std::size_t rank = 0;                  // dim L - dim L^2
};

inline std::optional<std::size_t> class_from_lcs(const std::vector<Subspace>& lcs) {
  if (lcs.back().dim() != 0) return std::nullopt;
  return lcs.size() - 1;
}

inline SeriesReport series_report(const Algebra& A, UcsMethod method = UcsMethod::dual) {
  SeriesReport r;
  r.lcs = lower_central_series(A);
  r.ucs = upper_central_series(A, method);
  r.nil_class = class_from_lcs(r.lcs);
  r.rank = A.dim() - (r.lcs.size() > 1 ? r.lcs[1].dim() : 0);
  return r;
}

inline std::optional<std::size_t> nilpotency_class(const Algebra& A) {
  return class_from_lcs(lower_central_series(A));
}

inline bool is_nilpotent(const Algebra& A) { return nilpotency_class(A).has_value(); }

inline bool is_ideal(const Algebra& A, const Subspace& i) {
  return i.contains(subspace_product(A, i, Subspace::full(A.field(), A.dim())));
}

/// Z(L): kernel of the stacked right-multiplication maps.
inline Subspace center(const Algebra& A) {
  const PrimeField& f = A.field();
  std::size_t d = A.dim();
  MatFp big(f, d * d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t c = 0; c < d; ++c)
        big.at(j * d + c, k) = A.basis_product(k, j)[c];
  return kernel(std::move(big));
}

/// Independent audit of the defining identities on all basis triples.
inline bool check_axioms(const Algebra& A) {
  return audit_product_table(A.form(), A.product_table());
}

/// Jacobi identity (uv)w + (vw)u + (wu)v = 0 on all basis triples. The
/// Jacobiator is trilinear and alternating, so sorted triples suffice.
inline bool is_lie(const Algebra& A) {
  const PrimeField& f = A.field();
  std::size_t d = A.dim();
  Coeffs e(d, 0);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b)
      for (std::size_t c = b + 1; c < d; ++c) {
        Coeffs ab(A.basis_product(a, b), A.basis_product(a, b) + d);
        Coeffs bc(A.basis_product(b, c), A.basis_product(b, c) + d);
        Coeffs ca(A.basis_product(c, a), A.basis_product(c, a) + d);
        e.assign(d, 0);
        e[c] = 1;
        Coeffs j = A.multiply(ab, e);
        e[c] = 0;
        e[a] = 1;
        Coeffs t = A.multiply(bc, e);
        e[a] = 0;
        e[b] = 1;
        Coeffs s = A.multiply(ca, e);
        e[b] = 0;
        for (std::size_t k = 0; k < d; ++k)
          if (f.add(f.add(j[k], t[k]), s[k]) != 0) return false;
      }
  return true;
}

/// (uv)w = u(vw) on all basis triples.
inline bool is_associative(const Algebra& A) {
  std::size_t d = A.dim();
  Coeffs e(d, 0);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        Coeffs ab(A.basis_product(a, b), A.basis_product(a, b) + d);
        e.assign(d, 0);
        e[c] = 1;
        Coeffs lhs = A.multiply(ab, e);
        e[c] = 0;
        e[a] = 1;
        Coeffs bc(A.basis_product(b, c), A.basis_product(b, c) + d);
        Coeffs rhs = A.multiply(e, bc);
        e[a] = 0;
        if (lhs != rhs) return false;
      }
  return true;
}

/// The algebra expressed in a new basis: row r of `basis` is the r-th new
/// basis vector in the old coordinates.
inline Algebra transform(const Algebra& A, const MatFp& basis) {
  std::size_t d = A.dim();
  if (basis.rows() != d || basis.cols() != d)
    throw DomainError("basis change must be a square matrix of the algebra dimension");
  TernaryForm nf(A.field(), A.half_dim());
  std::vector<Coeffs> rows;
  rows.reserve(d);
  for (std::size_t r = 0; r < d; ++r) rows.push_back(basis.row_vec(r));
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = a + 1; b < d; ++b)
      for (std::uint32_t c = b + 1; c < d; ++c) {
        std::uint32_t v = A.phi(rows[a], rows[b], rows[c]);
        if (v != 0) nf.set(a + 1, b + 1, c + 1, v);
      }
  return Algebra(std::move(nf));
}

/// Greedy symplectic Gram-Schmidt: splits the rows of a subspace with
/// non-degenerate induced form into standard pairs, smallest pivot first.
/// Returns the new basis rows in the order x1, y1, x2, y2, ...
inline std::vector<Coeffs> symplectic_pairs(const PrimeField& f,
                                            std::vector<Coeffs> pool) {
  std::vector<Coeffs> out;
  while (!pool.empty()) {
    Coeffs u = pool.front();
    pool.erase(pool.begin());
    std::size_t vi = pool.size();
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      s = symp_pair(f, u, pool[i]);
      if (s != 0) { vi = i; break; }
    }
    if (vi == pool.size())
      throw Error("symplectic Gram-Schmidt: degenerate form");
    Coeffs v = pool[vi];
    pool.erase(pool.begin() + vi);
    std::uint32_t si = f.inv(s);
    for (auto& x : v) x = f.mul(x, si);
    for (Coeffs& w : pool) {
      std::uint32_t alpha = symp_pair(f, w, v);
      std::uint32_t beta = symp_pair(f, u, w);
      for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = f.sub(w[k], f.mul(alpha, u[k]));
        w[k] = f.sub(w[k], f.mul(beta, v[k]));
      }
    }
    out.push_back(std::move(u));
    out.push_back(std::move(v));
  }
  return out;
}

/// The induced symplectic alternating algebra on I^perp / (I cap I^perp)
/// for an ideal I and the standard basis chosen for it.
struct Quotient {
  Algebra algebra;
  std::vector<Coeffs> basis;  // representatives in the original coordinates
};

inline Quotient induced_quotient(const Algebra& A, const Subspace& ideal) {
  if (!is_ideal(A, ideal)) throw DomainError("induced_quotient: subspace is not an ideal");
  const PrimeField& f = A.field();
  Subspace w = perp(ideal);
  Subspace k = subspace_intersect(ideal, w);
  // Complement of the radical inside I^perp: the RREF rows of I^perp whose
  // pivot column is not a pivot column of the radical.
  std::vector<bool> radical_piv(A.dim(), false);
  for (auto c : k.pivots()) radical_piv[c] = true;
  std::vector<Coeffs> pool;
  for (std::size_t r = 0; r < w.dim(); ++r)
    if (!radical_piv[w.pivots()[r]]) pool.push_back(w.basis().row_vec(r));
  std::vector<Coeffs> rows = symplectic_pairs(f, std::move(pool));
  std::size_t qn = rows.size() / 2;
  TernaryForm nf(f, qn);
  for (std::uint32_t a = 0; a < 2 * qn; ++a)
    for (std::uint32_t b = a + 1; b < 2 * qn; ++b)
      for (std::uint32_t c = b + 1; c < 2 * qn; ++c) {
        std::uint32_t v = A.phi(rows[a], rows[b], rows[c]);
        if (v != 0) nf.set(a + 1, b + 1, c + 1, v);
      }
  return Quotient{Algebra(std::move(nf)), std::move(rows)};
}

}  // namespace saa
