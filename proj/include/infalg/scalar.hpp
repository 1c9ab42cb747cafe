#pragma once
// Exact scalar fields: arbitrary-precision rationals and prime fields F_p.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace infalg {

/// Exact rational number backed by GMP. Always kept in canonical form.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Rational parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal '" + text + "'");
    if (q.get_den() == 0) throw std::domain_error("zero denominator in '" + text + "'");
    q.canonicalize();
    return Rational(q);
  }

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] std::string str() const { return q_.get_str(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  static std::string field_name() { return "q"; }

 private:
  mpq_class q_{0};
};

/// Element of the prime field F_p. The modulus is a per-thread setting
/// installed with ModP::Scope; values must not cross scopes with different p.
class ModP {
 public:
  class Scope {
   public:
    explicit Scope(std::uint64_t p) : saved_(modulus()) {
      if (p < 2 || !is_prime(p)) throw std::invalid_argument("fp modulus must be prime, got " + std::to_string(p));
      modulus() = p;
    }
    ~Scope() { modulus() = saved_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    std::uint64_t saved_;
  };

  ModP() = default;
  ModP(long v) : v_(reduce(v)) {}  // NOLINT(google-explicit-constructor)
  ModP(long num, long den) {
    ModP d(den);
    if (d.is_zero()) throw std::domain_error("denominator vanishes in F_" + std::to_string(p()));
    *this = ModP(num) / d;
  }

  static ModP parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return ModP(Rational::parse(text).raw().get_num());
    Rational r = Rational::parse(text);
    ModP den(r.raw().get_den());
    if (den.is_zero()) throw std::domain_error("denominator vanishes in F_" + std::to_string(p()));
    return ModP(r.raw().get_num()) / den;
  }

  static std::uint64_t p() {
    if (modulus() == 0) throw std::logic_error("ModP used outside of a ModP::Scope");
    return modulus();
  }

  [[nodiscard]] bool is_zero() const { return v_ == 0; }
  [[nodiscard]] std::string str() const { return std::to_string(v_); }
  [[nodiscard]] std::uint64_t value() const { return v_; }

  ModP& operator+=(const ModP& o) { v_ = (v_ + o.v_) % p(); return *this; }
  ModP& operator-=(const ModP& o) { v_ = (v_ + p() - o.v_) % p(); return *this; }
  ModP& operator*=(const ModP& o) {
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % p());
    return *this;
  }
  ModP& operator/=(const ModP& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in F_" + std::to_string(p()));
    return *this *= o.pow(p() - 2);
  }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a) { return ModP() - a; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }

  static bool is_prime(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }
  static std::string field_name() { return "fp:" + std::to_string(p()); }

 private:
  explicit ModP(const mpz_class& z) {
    mpz_class r = z % mpz_class(std::to_string(p()));
    if (r < 0) r += mpz_class(std::to_string(p()));
    v_ = std::stoull(r.get_str());
  }

  static std::uint64_t& modulus() {
    thread_local std::uint64_t m = 0;
    return m;
  }
  static std::uint64_t reduce(long v) {
    auto m = static_cast<long long>(p());
    long long r = static_cast<long long>(v) % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
  }
  [[nodiscard]] ModP pow(std::uint64_t e) const {
    ModP base = *this, acc(1);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  std::uint64_t v_ = 0;
};

template <class K>
concept Field = std::regular<K> && requires(K a, const K& b, long n, const std::string& s) {
  { K(n) };
  { K(n, n) };
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.str() } -> std::same_as<std::string>;
  { K::parse(s) } -> std::same_as<K>;
};

/// 1/2 in K; throws in characteristic 2.
template <Field K>
K half() {
  K two(2);
  if (two.is_zero()) throw std::domain_error("1/2 does not exist in characteristic 2");
  return K(1) / two;
}

template <Field K>
K sign_of(int parity) {
  return (parity & 1) ? K(-1) : K(1);
}

}  // namespace infalg
