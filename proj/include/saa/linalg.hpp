#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

#include "saa/fp.hpp"

namespace saa {

using Coeffs = std::vector<std::uint32_t>;

/// Dense matrix over GF(p), entries stored row-major as canonical residues.
class MatFp {
 public:
  MatFp(const PrimeField& f, std::size_t rows, std::size_t cols)
      : f_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static MatFp identity(const PrimeField& f, std::size_t n) {
    MatFp m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  const PrimeField& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }
  std::uint32_t* row(std::size_t r) { return a_.data() + r * cols_; }
  const std::uint32_t* row(std::size_t r) const { return a_.data() + r * cols_; }

  void append_row(const Coeffs& v) {
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
  }
  Coeffs row_vec(std::size_t r) const {
    return Coeffs(row(r), row(r) + cols_);
  }

  bool operator==(const MatFp& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  MatFp mul(const MatFp& o) const {
    if (cols_ != o.rows_ || f_ != o.f_) throw DomainError("matrix product shape mismatch");
    MatFp r(f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        std::uint32_t v = at(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r.at(i, j) = f_.add(r.at(i, j), f_.mul(v, o.at(k, j)));
      }
    return r;
  }

  /// In-place reduced row echelon form. Zero rows end up at the bottom;
  /// returns the pivot columns in order. Deterministic.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
      std::size_t sel = lead;
      while (sel < rows_ && at(sel, c) == 0) ++sel;
      if (sel == rows_) continue;
      if (sel != lead)
        std::swap_ranges(row(sel), row(sel) + cols_, row(lead));
      std::uint32_t s = f_.inv(at(lead, c));
      if (s != 1)
        for (std::size_t j = c; j < cols_; ++j)
          at(lead, j) = f_.mul(at(lead, j), s);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == lead) continue;
        std::uint32_t v = at(r, c);
        if (v == 0) continue;
        for (std::size_t j = c; j < cols_; ++j)
          at(r, j) = f_.sub(at(r, j), f_.mul(v, at(lead, j)));
      }
      pivots.push_back(c);
      ++lead;
    }
    return pivots;
  }

  void drop_zero_rows() {
    std::size_t kept = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      bool zero = true;
      for (std::size_t c = 0; c < cols_; ++c)
        if (at(r, c) != 0) { zero = false; break; }
      if (!zero) {
        if (kept != r)
          std::copy(row(r), row(r) + cols_, this->row(kept));
        ++kept;
      }
    }
    rows_ = kept;
    a_.resize(kept * cols_);
  }

 private:
  PrimeField f_;
  std::size_t rows_, cols_;
  Coeffs a_;
};

inline MatFp rref(MatFp m) {
  m.rref();
  return m;
}

/// A subspace of F^d in canonical form: the basis matrix is the RREF of any
/// spanning set with zero rows pruned. Equal subspaces compare equal.
class Subspace {
 public:
  /// Span of the rows of m.
  static Subspace span(MatFp m) {
    auto piv = m.rref();
    m.drop_zero_rows();
    return Subspace(std::move(m), std::move(piv));
  }

  static Subspace zero(const PrimeField& f, std::size_t ambient) {
    return Subspace(MatFp(f, 0, ambient), {});
  }

  static Subspace full(const PrimeField& f, std::size_t ambient) {
    return span(MatFp::identity(f, ambient));
  }

  const MatFp& basis() const { return b_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }
  std::size_t dim() const { return b_.rows(); }
  std::size_t ambient() const { return b_.cols(); }
  const PrimeField& field() const { return b_.field(); }

  bool operator==(const Subspace& o) const { return b_ == o.b_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  /// Reduce v against the basis rows; the residual is zero iff v lies in
  /// the subspace.
  Coeffs reduce(Coeffs v) const {
    const auto& f = b_.field();
    for (std::size_t r = 0; r < b_.rows(); ++r) {
      std::uint32_t c = v[piv_[r]];
      if (c == 0) continue;
      for (std::size_t j = piv_[r]; j < b_.cols(); ++j)
        v[j] = f.sub(v[j], f.mul(c, b_.at(r, j)));
    }
    return v;
  }

  bool contains(const Coeffs& v) const {
    Coeffs r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
  }

  bool contains(const Subspace& o) const {
    for (std::size_t r = 0; r < o.dim(); ++r)
      if (!contains(o.b_.row_vec(r))) return false;
    return true;
  }

 private:
  Subspace(MatFp b, std::vector<std::size_t> piv)
      : b_(std::move(b)), piv_(std::move(piv)) {}

  MatFp b_;
  std::vector<std::size_t> piv_;
};

inline void check_same_ambient(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient() || u.field() != v.field())
    throw DomainError("subspaces live in different ambient spaces");
}

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  check_same_ambient(u, v);
  MatFp m(u.field(), 0, u.ambient());
  for (std::size_t r = 0; r < u.dim(); ++r) m.append_row(u.basis().row_vec(r));
  for (std::size_t r = 0; r < v.dim(); ++r) m.append_row(v.basis().row_vec(r));
  return Subspace::span(std::move(m));
}

/// Null space {x : m x = 0}, canonical.
inline Subspace kernel(MatFp m) {
  const PrimeField f = m.field();
  std::size_t n = m.cols();
  auto piv = m.rref();
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  MatFp basis(f, 0, n);
  for (std::size_t c = 0; c < n; ++c) {
    if (is_piv[c]) continue;
    Coeffs v(n, 0);
    v[c] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      v[piv[r]] = f.neg(m.at(r, c));
    basis.append_row(v);
  }
  return Subspace::span(std::move(basis));
}

/// Intersection via the kernel method: coefficient vectors (a, b) with
/// a U = b V give the common elements.
inline Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  check_same_ambient(u, v);
  const PrimeField f = u.field();
  std::size_t d = u.ambient(), du = u.dim(), dv = v.dim();
  if (du == 0 || dv == 0) return Subspace::zero(f, d);
  // Columns are the stacked basis vectors of U and -V.
  MatFp m(f, d, du + dv);
  for (std::size_t r = 0; r < du; ++r)
    for (std::size_t c = 0; c < d; ++c) m.at(c, r) = u.basis().at(r, c);
  for (std::size_t r = 0; r < dv; ++r)
    for (std::size_t c = 0; c < d; ++c) m.at(c, du + r) = f.neg(v.basis().at(r, c));
  Subspace ker = kernel(std::move(m));
  MatFp out(f, 0, d);
  for (std::size_t r = 0; r < ker.dim(); ++r) {
    Coeffs w(d, 0);
    for (std::size_t i = 0; i < du; ++i) {
      std::uint32_t a = ker.basis().at(r, i);
      if (a == 0) continue;
      for (std::size_t c = 0; c < d; ++c)
        w[c] = f.add(w[c], f.mul(a, u.basis().at(i, c)));
    }
    out.append_row(w);
  }
  return Subspace::span(std::move(out));
}

/// Solve A x = b. Returns the particular solution with all free variables
/// set to zero (deterministic), or nullopt if inconsistent.
inline std::optional<Coeffs> solve(MatFp a, const Coeffs& b) {
  const PrimeField f = a.field();
  std::size_t n = a.cols();
  MatFp aug(f, a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n) = b[r];
  }
  auto piv = aug.rref();
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  Coeffs x(n, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, n);
  return x;
}

// ---------------------------------------------------------------------------
// The standard symplectic structure on F^{2n}. Basis order is
// x1, y1, x2, y2, ..., xn, yn; (xi, yi) = 1 and all other pairings vanish.
// ---------------------------------------------------------------------------

inline std::size_t x_index(std::size_t i) { return 2 * (i - 1); }      // xi, 1-based i
inline std::size_t y_index(std::size_t i) { return 2 * (i - 1) + 1; }  // yi, 1-based i

/// The Gram matrix of the standard symplectic form.
inline MatFp standard_gram(const PrimeField& f, std::size_t n) {
  MatFp g(f, 2 * n, 2 * n);
  for (std::size_t i = 1; i <= n; ++i) {
    g.at(x_index(i), y_index(i)) = 1;
    g.at(y_index(i), x_index(i)) = f.neg(1);
  }
  return g;
}

/// (u, v) under the standard symplectic form.
inline std::uint32_t symp_pair(const PrimeField& f, const Coeffs& u, const Coeffs& v) {
  std::uint32_t acc = 0;
  for (std::size_t k = 0; k + 1 < u.size(); k += 2) {
    acc = f.add(acc, f.mul(u[k], v[k + 1]));
    acc = f.sub(acc, f.mul(u[k + 1], v[k]));
  }
  return acc;
}

/// Row vector w with (u, v) = w . v for all v; i.e. u contracted with the
/// Gram matrix.
inline Coeffs symp_functional(const PrimeField& f, const Coeffs& u) {
  Coeffs w(u.size(), 0);
  for (std::size_t k = 0; k + 1 < u.size(); k += 2) {
    w[k + 1] = u[k];
    w[k] = f.neg(u[k + 1]);
  }
  return w;
}

/// U^perp = { v : (u, v) = 0 for all u in U }.
inline Subspace perp(const Subspace& u) {
  const PrimeField f = u.field();
  if (u.dim() == 0) return Subspace::full(f, u.ambient());
  MatFp m(f, 0, u.ambient());
  for (std::size_t r = 0; r < u.dim(); ++r)
    m.append_row(symp_functional(f, u.basis().row_vec(r)));
  return kernel(std::move(m));
}

inline bool is_isotropic(const Subspace& u) {
  const PrimeField f = u.field();
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = i + 1; j < u.dim(); ++j)
      if (symp_pair(f, u.basis().row_vec(i), u.basis().row_vec(j)) != 0)
        return false;
  return true;
}

/// Symplectic transvection x -> x + lambda (x, v) v as a basis-row matrix.
inline MatFp transvection(const PrimeField& f, const Coeffs& v, std::uint32_t lambda) {
  std::size_t d = v.size();
  MatFp m = MatFp::identity(f, d);
  for (std::size_t i = 0; i < d; ++i) {
    Coeffs ei(d, 0);
    ei[i] = 1;
    std::uint32_t c = f.mul(lambda, symp_pair(f, ei, v));
    if (c == 0) continue;
    for (std::size_t j = 0; j < d; ++j)
      m.at(i, j) = f.add(m.at(i, j), f.mul(c, v[j]));
  }
  return m;
}

/// Product of random transvections: a pseudo-random element of Sp(2n, p),
/// deterministic for a given generator state.
inline MatFp random_symplectic(const PrimeField& f, std::size_t n, std::mt19937_64& rng) {
  std::size_t d = 2 * n;
  MatFp m = MatFp::identity(f, d);
  std::uniform_int_distribution<std::uint32_t> coord(0, f.p() - 1);
  std::uniform_int_distribution<std::uint32_t> unit(1, f.p() - 1);
  for (std::size_t t = 0; t < 3 * d; ++t) {
    Coeffs v(d, 0);
    bool nonzero = false;
    while (!nonzero) {
      for (auto& x : v) {
        x = coord(rng);
        nonzero = nonzero || x != 0;
      }
    }
    m = transvection(f, v, unit(rng)).mul(m);
  }
  return m;
}

/// True iff the rows of m form a standard-form-preserving basis: m J m^T = J.
inline bool is_symplectic(const MatFp& m) {
  const PrimeField f = m.field();
  std::size_t d = m.rows();
  if (d != m.cols() || d % 2 != 0) return false;
  MatFp j = standard_gram(f, d / 2);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (symp_pair(f, m.row_vec(a), m.row_vec(b)) != j.at(a, b)) return false;
  return true;
}

}  // namespace saa
