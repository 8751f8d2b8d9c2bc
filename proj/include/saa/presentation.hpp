#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "saa/algebra.hpp"

namespace saa {

struct OutOfRange : Error {
  using Error::Error;
};

/// Sparse nilpotent presentation: alpha(i,j,k) = (xi yj, yk) and
/// beta(i,j,k) = (yi yj, yk) for 1 <= i < j < k <= n, zero entries omitted.
/// Every such presentation yields a nilpotent algebra and every nilpotent
/// algebra has one with respect to a suitable standard basis.
class NilpotentPresentation {
 public:
  NilpotentPresentation(const PrimeField& f, std::size_t n) : f_(f), n_(n) {}

  const PrimeField& field() const { return f_; }
  std::size_t half_dim() const { return n_; }
  const std::map<Triple, std::uint32_t>& alpha() const { return alpha_; }
  const std::map<Triple, std::uint32_t>& beta() const { return beta_; }

  void set_alpha(std::uint32_t i, std::uint32_t j, std::uint32_t k, std::uint32_t v) {
    set(alpha_, i, j, k, v);
  }
  void set_beta(std::uint32_t i, std::uint32_t j, std::uint32_t k, std::uint32_t v) {
    set(beta_, i, j, k, v);
  }

  bool empty() const { return alpha_.empty() && beta_.empty(); }

  bool operator==(const NilpotentPresentation& o) const {
    return f_ == o.f_ && n_ == o.n_ && alpha_ == o.alpha_ && beta_ == o.beta_;
  }
  bool operator!=(const NilpotentPresentation& o) const { return !(*this == o); }

  /// Number of free parameters: 2 C(n, 3).
  static std::uint64_t parameter_count(std::size_t n) {
    return n < 3 ? 0 : std::uint64_t(n) * (n - 1) * (n - 2) / 3;
  }

  /// The keys (i, j, k), 1 <= i < j < k <= n, in lexicographic order.
  static std::vector<Triple> sorted_keys(std::size_t n) {
    std::vector<Triple> keys;
    for (std::uint32_t i = 1; i + 2 <= n; ++i)
      for (std::uint32_t j = i + 1; j + 1 <= n; ++j)
        for (std::uint32_t k = j + 1; k <= n; ++k) keys.push_back({i, j, k});
    return keys;
  }

 private:
  void set(std::map<Triple, std::uint32_t>& m, std::uint32_t i, std::uint32_t j,
           std::uint32_t k, std::uint32_t v) {
    if (!(1 <= i && i < j && j < k && k <= n_))
      throw DomainError("presentation indices must satisfy 1 <= i < j < k <= n");
    v %= f_.p();
    if (v == 0)
      m.erase({i, j, k});
    else
      m[{i, j, k}] = v;
  }

  PrimeField f_;
  std::size_t n_;
  std::map<Triple, std::uint32_t> alpha_;
  std::map<Triple, std::uint32_t> beta_;
};

/// The ternary form of a presentation in global basis indices:
/// xi -> e_{2i-1}, yj -> e_{2j}.
inline TernaryForm presentation_form(const NilpotentPresentation& p) {
  TernaryForm form(p.field(), p.half_dim());
  for (const auto& [t, v] : p.alpha())
    form.set(2 * t[0] - 1, 2 * t[1], 2 * t[2], v);
  for (const auto& [t, v] : p.beta())
    form.set(2 * t[0], 2 * t[1], 2 * t[2], v);
  return form;
}

/// Build the algebra of a nilpotent presentation. With verify set the
/// nilpotency guaranteed by the construction is asserted outright.
inline Algebra build_algebra(const NilpotentPresentation& p, bool verify = true) {
  Algebra a(presentation_form(p));
  if (verify && !is_nilpotent(a))
    throw Error("nilpotent presentation produced a non-nilpotent algebra");
  return a;
}

/// If the form only has presentation-shaped triples, read the presentation
/// back off; otherwise nullopt. Global triple (2i-1, 2j, 2k), i < j < k is an
/// alpha entry and (2i, 2j, 2k) a beta entry.
inline std::optional<NilpotentPresentation> presentation_from_form(const TernaryForm& form) {
  NilpotentPresentation p(form.field(), form.half_dim());
  for (const auto& [t, v] : form.entries()) {
    std::uint32_t a = t[0], b = t[1], c = t[2];
    if (a % 2 == 1 && b % 2 == 0 && c % 2 == 0) {
      std::uint32_t i = (a + 1) / 2, j = b / 2, k = c / 2;
      if (!(i < j && j < k)) return std::nullopt;
      p.set_alpha(i, j, k, v);
    } else if (a % 2 == 0 && b % 2 == 0 && c % 2 == 0) {
      p.set_beta(a / 2, b / 2, c / 2, v);
    } else {
      return std::nullopt;
    }
  }
  return p;
}

/// Ascending chain {0} = I_0 < I_1 < ... < I_n of isotropic ideals with
/// dim I_r = r and every step central: I_r L <= I_{r-1}.
struct IsotropicChain {
  std::vector<Subspace> terms;  // I_0 ... I_n
};

namespace detail {

/// Chain construction for a known-nilpotent algebra with its centre given.
inline IsotropicChain isotropic_chain_unchecked(const Algebra& A, const Subspace& z) {
  const PrimeField& f = A.field();
  std::size_t n = A.half_dim();
  Subspace full = Subspace::full(f, A.dim());
  IsotropicChain chain;
  chain.terms.push_back(Subspace::zero(f, A.dim()));
  if (is_isotropic(z)) {
    for (std::size_t r = 1; r <= z.dim(); ++r) {
      MatFp m(f, 0, A.dim());
      for (std::size_t i = 0; i < r; ++i) m.append_row(z.basis().row_vec(i));
      chain.terms.push_back(Subspace::span(std::move(m)));
    }
  }
  while (chain.terms.back().dim() < n) {
    const Subspace& cur = chain.terms.back();
    Subspace reach = perp(cur);
    for (std::size_t step = 0;; ++step) {
      if (step > A.dim() + 1) throw Error("isotropic chain: product chain did not terminate");
      Subspace next = subspace_product(A, reach, full);
      if (cur.contains(next)) break;
      reach = std::move(next);
    }
    std::size_t pick = reach.dim();
    for (std::size_t r = 0; r < reach.dim(); ++r)
      if (!cur.contains(reach.basis().row_vec(r))) { pick = r; break; }
    if (pick == reach.dim()) throw Error("isotropic chain: no eligible extension vector");
    MatFp one(f, 0, A.dim());
    one.append_row(reach.basis().row_vec(pick));
    chain.terms.push_back(subspace_sum(cur, Subspace::span(std::move(one))));
  }
  return chain;
}

}  // namespace detail

/// Deterministic construction of an isotropic chain. When the centre is
/// isotropic the chain starts with a flag of Z(L); each later step picks the
/// first echelon vector of I^perp L...L (longest product not inside I), the
/// recipe that keeps the extension central and isotropic.
inline IsotropicChain build_isotropic_chain(const Algebra& A) {
  std::vector<Subspace> lcs = lower_central_series(A);
  if (lcs.back().dim() != 0)
    throw DomainError("isotropic chain requires a nilpotent algebra");
  Subspace z = lcs.size() > 1 ? perp(lcs[1]) : Subspace::full(A.field(), A.dim());
  return detail::isotropic_chain_unchecked(A, z);
}

struct ExtractedPresentation {
  NilpotentPresentation presentation;
  MatFp basis;  // rows x1, y1, ..., xn, yn in the original coordinates
};

namespace detail {

inline ExtractedPresentation extract_with_chain(const Algebra& A, const IsotropicChain& chain) {
  const PrimeField& f = A.field();
  std::size_t n = A.half_dim(), d = A.dim();
  // x_{n+1-k}: first echelon vector of I_k outside I_{k-1}.
  std::vector<Coeffs> xs(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const Subspace& ik = chain.terms[k];
    const Subspace& prev = chain.terms[k - 1];
    std::size_t pick = ik.dim();
    for (std::size_t r = 0; r < ik.dim(); ++r)
      if (!prev.contains(ik.basis().row_vec(r))) { pick = r; break; }
    if (pick == ik.dim()) throw Error("extract_presentation: chain is not strictly increasing");
    xs[n + 1 - k] = ik.basis().row_vec(pick);
  }
  // y_k in I_{n-k}^perp with (x_j, y_k) = delta_{jk} and (y_j, y_k) = 0, j < k;
  // the particular echelon solution makes the choice canonical.
  std::vector<Coeffs> ys(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    Subspace w = perp(chain.terms[n - k]);
    MatFp sys(f, 0, w.dim());
    Coeffs rhs;
    auto add_row = [&](const Coeffs& v, std::uint32_t r) {
      Coeffs row(w.dim(), 0);
      for (std::size_t t = 0; t < w.dim(); ++t)
        row[t] = symp_pair(f, v, w.basis().row_vec(t));
      sys.append_row(row);
      rhs.push_back(r);
    };
    for (std::size_t j = 1; j <= n; ++j) add_row(xs[j], j == k ? 1 : 0);
    for (std::size_t j = 1; j < k; ++j) add_row(ys[j], 0);
    auto t = solve(std::move(sys), rhs);
    if (!t) throw Error("extract_presentation: dual basis system is inconsistent");
    Coeffs yk(d, 0);
    for (std::size_t r = 0; r < w.dim(); ++r) {
      if ((*t)[r] == 0) continue;
      for (std::size_t c = 0; c < d; ++c)
        yk[c] = f.add(yk[c], f.mul((*t)[r], w.basis().at(r, c)));
    }
    ys[k] = std::move(yk);
  }
  MatFp basis(f, 0, d);
  for (std::size_t i = 1; i <= n; ++i) {
    basis.append_row(xs[i]);
    basis.append_row(ys[i]);
  }
  if (!is_symplectic(basis))
    throw Error("extract_presentation: adapted basis is not standard");
  Algebra moved = transform(A, basis);
  auto p = presentation_from_form(moved.form());
  if (!p)
    throw Error("extract_presentation: adapted form is not presentation-shaped");
  return ExtractedPresentation{std::move(*p), std::move(basis)};
}

}  // namespace detail

/// Standard basis adapted to an isotropic chain (I_k spanned by xn..x_{n+1-k},
/// I_{n-k}^perp = I_n + Fy_1 + ... + Fy_k) and the presentation it induces.
/// Rebuilding the presentation and transforming the input by the returned
/// basis give identical algebras.
inline ExtractedPresentation extract_presentation(const Algebra& A) {
  return detail::extract_with_chain(A, build_isotropic_chain(A));
}

/// Maximal-class criterion for a presentation with n >= 4: the products
/// x_{n-2} y_{n-1}, ..., x_2 y_3 are non-zero and x_1 y_2, y_1 y_2 are
/// linearly independent, evaluated in the built algebra.
inline bool is_maximal_class_presentation(const NilpotentPresentation& p) {
  std::size_t n = p.half_dim();
  if (n < 4) throw OutOfRange("maximal-class criterion requires n >= 4");
  Algebra a = build_algebra(p, false);
  const PrimeField& f = p.field();
  std::size_t d = a.dim();
  auto product = [&](std::size_t xi, std::size_t yj) {
    Coeffs u(d, 0), v(d, 0);
    u[x_index(xi)] = 1;
    v[y_index(yj)] = 1;
    return a.multiply(u, v);
  };
  auto is_zero = [](const Coeffs& v) {
    for (auto x : v)
      if (x != 0) return false;
    return true;
  };
  for (std::size_t i = 2; i + 2 <= n; ++i)
    if (is_zero(product(i, i + 1))) return false;
  Coeffs y1(d, 0), y2(d, 0);
  y1[y_index(1)] = 1;
  y2[y_index(2)] = 1;
  MatFp m(f, 0, d);
  m.append_row(product(1, 2));
  m.append_row(a.multiply(y1, y2));
  return Subspace::span(std::move(m)).dim() == 2;
}

/// The family (x_{n-2} y_{n-1}, y_n) = ... = (x_1 y_2, y_n) = -1,
/// (y_1 y_2, y_{n-1}) = -1 of maximal-class presentations, n >= 4.
inline NilpotentPresentation maximal_class_family(std::size_t n, const PrimeField& f) {
  if (n < 4) throw OutOfRange("maximal-class family requires n >= 4");
  NilpotentPresentation p(f, n);
  for (std::uint32_t i = 1; i + 2 <= n; ++i)
    p.set_alpha(i, i + 1, static_cast<std::uint32_t>(n), f.neg(1));
  p.set_beta(1, 2, static_cast<std::uint32_t>(n - 1), f.neg(1));
  return p;
}

// ---------------------------------------------------------------------------
// Builtin catalogue: every named algebra used by the golden tests.
// ---------------------------------------------------------------------------

inline std::vector<std::string> builtin_names() {
  return {"example12", "prop211_example", "P1", "P2", "P3", "Pr", "maxclass"};
}

/// Presentation for a catalogue name, or nullopt for example12 which is
/// given as a plain ternary form.
inline std::optional<NilpotentPresentation> builtin_presentation(
    const std::string& name, const PrimeField& f,
    std::optional<std::uint32_t> r = std::nullopt,
    std::optional<std::size_t> n = std::nullopt) {
  if (name == "example12") return std::nullopt;
  if (name == "P1") {
    NilpotentPresentation p(f, 3);
    p.set_beta(1, 2, 3, 1);
    return p;
  }
  if (name == "P2") {
    NilpotentPresentation p(f, 4);
    p.set_beta(1, 2, 3, 1);
    return p;
  }
  if (name == "P3") {
    NilpotentPresentation p(f, 4);
    p.set_beta(1, 2, 3, 1);
    p.set_alpha(1, 3, 4, 1);
    return p;
  }
  if (name == "Pr") {
    std::uint32_t rv = r.value_or(0) % f.p();
    if (rv == 0) throw DomainError("Pr requires a parameter r != 0");
    NilpotentPresentation p(f, 4);
    p.set_alpha(2, 3, 4, rv);
    p.set_alpha(1, 2, 4, 1);
    p.set_beta(1, 2, 3, 1);
    return p;
  }
  if (name == "prop211_example") {
    NilpotentPresentation p(f, 4);
    p.set_alpha(2, 3, 4, 1);
    p.set_alpha(1, 2, 3, 1);
    p.set_beta(1, 2, 4, 1);
    return p;
  }
  if (name == "maxclass") {
    if (!n) throw DomainError("maxclass requires the half-dimension parameter n");
    return maximal_class_family(*n, f);
  }
  throw DomainError("unknown builtin algebra '" + name + "'");
}

/// The 12-dimensional algebra with (x3 y5, y6) = (x2 y4, y6) = (x1 y4, y5) =
/// (y1 y2, y3) = 1; nilpotent of class 4, with L^2 L^2 not an ideal.
inline TernaryForm example12_form(const PrimeField& f) {
  TernaryForm form(f, 6);
  form.set(5, 10, 12, 1);  // (x3 y5, y6)
  form.set(3, 8, 12, 1);   // (x2 y4, y6)
  form.set(1, 8, 10, 1);   // (x1 y4, y5)
  form.set(2, 4, 6, 1);    // (y1 y2, y3)
  return form;
}

inline Algebra builtin_algebra(const std::string& name, const PrimeField& f,
                               std::optional<std::uint32_t> r = std::nullopt,
                               std::optional<std::size_t> n = std::nullopt) {
  if (name == "example12") return Algebra(example12_form(f));
  return build_algebra(*builtin_presentation(name, f, r, n));
}

}  // namespace saa
