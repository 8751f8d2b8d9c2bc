#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace saa {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Division by zero in a prime field.
struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

/// Two elements of distinct prime fields were combined.
struct FieldMismatch : Error {
  FieldMismatch() : Error("elements belong to different prime fields") {}
};

/// Input outside an operation's documented domain.
struct DomainError : Error {
  using Error::Error;
};

/// The prime field GF(p). Immutable; all arithmetic is exact on canonical
/// residues in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || !is_prime(p))
      throw DomainError("modulus " + std::to_string(p) + " is not prime");
  }

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;  // p < 2^31, no overflow
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
  }
  std::uint32_t reduce(std::int64_t a) const {
    std::int64_t r = a % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  /// Inverse by the extended Euclidean algorithm.
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero();
    std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      std::int64_t t2 = t0 - q * t1;
      t0 = t1;
      t1 = t2;
    }
    return static_cast<std::uint32_t>(t0 < 0 ? t0 + p_ : t0);
  }

  std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
    return mul(a, inv(b));
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint64_t base = a % p_, acc = 1;
    while (e != 0) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
  }

  /// True iff a is a cube in F*. Every element is a cube when 3 does not
  /// divide p-1; otherwise the cubes are the kernel of x -> x^((p-1)/3).
  bool is_cube(std::uint32_t a) const {
    if (a == 0) throw DomainError("is_cube: zero argument");
    if ((p_ - 1) % 3 != 0) return true;
    return pow(a, (p_ - 1) / 3) == 1;
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint32_t d = 3; std::uint64_t(d) * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }

 private:
  std::uint32_t p_;
};

/// An element of GF(p). Carries its modulus so that mixing fields is
/// detected; the heavy kernels work on raw residues through PrimeField.
class Fp {
 public:
  Fp(std::uint32_t value, const PrimeField& field)
      : v_(value % field.p()), p_(field.p()) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  PrimeField field() const { return PrimeField(p_); }

  friend Fp operator+(Fp a, Fp b) {
    a.check(b);
    std::uint32_t s = a.v_ + b.v_;
    return Fp(s >= a.p_ ? s - a.p_ : s, a.p_);
  }
  friend Fp operator-(Fp a, Fp b) {
    a.check(b);
    return Fp(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  friend Fp operator*(Fp a, Fp b) {
    a.check(b);
    return Fp(static_cast<std::uint32_t>(std::uint64_t(a.v_) * b.v_ % a.p_),
              a.p_);
  }
  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

  Fp inverse() const { return Fp(PrimeField(p_).inv(v_), p_); }

  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

 private:
  Fp(std::uint32_t v, std::uint32_t p) : v_(v), p_(p) {}
  void check(const Fp& o) const {
    if (p_ != o.p_) throw FieldMismatch();
  }

  std::uint32_t v_;
  std::uint32_t p_;
};

/// Canonical representative of the coset r(F*)^3: the smallest s in F* such
/// that r/s is a cube. Constant on cosets of the cube subgroup.
inline std::uint32_t cube_coset_rep(const PrimeField& F, std::uint32_t r) {
  if (r % F.p() == 0) throw DomainError("cube_coset_rep: zero argument");
  r %= F.p();
  for (std::uint32_t s = 1; s < F.p(); ++s) {
    if (F.is_cube(F.mul(r, F.inv(s)))) return s;
  }
  throw Error("cube_coset_rep: unreachable");
}

}  // namespace saa
