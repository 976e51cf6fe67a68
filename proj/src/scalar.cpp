#include "spinlab/scalar.hpp"

#include <limits>
#include <numeric>

namespace spinlab {

namespace {

constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

unsigned __int128 uabs(__int128 x) { return x < 0 ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x); }

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0)
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 x) {
  return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

mpq_class mpq_from_i128(__int128 num, __int128 den) {
  auto to_mpz = [](__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = uabs(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  };
  mpq_class q(to_mpz(num), to_mpz(den));
  q.canonicalize();
  return q;
}

std::int64_t mod_reduce(std::int64_t n, std::uint32_t p) {
  std::int64_t r = n % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

std::uint32_t mpz_mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec make_field(std::int64_t p) {
  if (p == 0) return FieldSpec(0);
  if (p == 2) throw InvalidField("characteristic 2 is not supported");
  if (p < 0 || p > kMaxModulus || !is_prime(p))
    throw InvalidField("characteristic must be 0 or an odd prime, got " + std::to_string(p));
  return FieldSpec(static_cast<std::uint32_t>(p));
}

std::string FieldSpec::name() const {
  return p_ == 0 ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw DivideByZero("no inverse modulo " + std::to_string(p));
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

Scalar Scalar::from_integer(std::int64_t n, FieldSpec f) {
  Scalar s(f);
  if (f.is_rational()) {
    s.num_ = n;
  } else {
    s.num_ = mod_reduce(n, f.characteristic());
  }
  return s;
}

Scalar Scalar::from_fraction(std::int64_t num, std::int64_t den, FieldSpec f) {
  if (den == 0) throw DivideByZero("zero denominator");
  return from_integer(num, f) / from_integer(den, f);
}

Scalar Scalar::from_mpq(const mpq_class& q, FieldSpec f) {
  if (f.is_rational()) {
    Scalar s(f);
    s.set_big(q);
    return s;
  }
  std::uint32_t p = f.characteristic();
  std::uint32_t den = mpz_mod(q.get_den(), p);
  if (den == 0) throw DivideByZero("denominator vanishes modulo " + std::to_string(p));
  Scalar s(f);
  s.num_ = static_cast<std::int64_t>(
      static_cast<std::uint64_t>(mpz_mod(q.get_num(), p)) * inverse_mod(den, p) % p);
  return s;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw FieldMismatch("mixed-field arithmetic: " + field_.name() + " vs " + o.field_.name());
}

void Scalar::set_small_or_big(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    big_.reset();
    num_ = 0;
    den_ = 1;
    return;
  }
  if (den != 1) {
    unsigned __int128 g = gcd128(uabs(num), static_cast<unsigned __int128>(den));
    if (g != 1) {
      num /= static_cast<__int128>(g);
      den /= static_cast<__int128>(g);
    }
  }
  if (fits64(num) && fits64(den)) {
    big_.reset();
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
  } else {
    set_big(mpq_from_i128(num, den));
  }
}

void Scalar::set_big(mpq_class q) {
  q.canonicalize();
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    big_.reset();
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(q));
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  if (!field_.is_rational()) return mpq_class(static_cast<long>(num_));
  mpq_class q(static_cast<long>(num_), static_cast<long>(den_));
  q.canonicalize();
  return q;
}

std::uint32_t Scalar::residue() const {
  if (field_.is_rational()) throw FieldMismatch("residue() requires a finite field");
  return static_cast<std::uint32_t>(num_);
}

Scalar Scalar::operator-() const {
  Scalar r(field_);
  if (!field_.is_rational()) {
    r.num_ = num_ == 0 ? 0 : field_.characteristic() - num_;
  } else if (big_) {
    r.set_big(-*big_);
  } else {
    r.set_small_or_big(-static_cast<__int128>(num_), den_);
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivideByZero("inverse of zero");
  Scalar r(field_);
  if (!field_.is_rational()) {
    r.num_ = inverse_mod(static_cast<std::uint32_t>(num_), field_.characteristic());
  } else if (big_) {
    r.set_big(1 / *big_);
  } else {
    r.set_small_or_big(den_, num_);
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (!field_.is_rational()) {
    std::int64_t s = num_ + o.num_;
    std::int64_t p = field_.characteristic();
    num_ = s >= p ? s - p : s;
    return *this;
  }
  if (big_ || o.big_) {
    set_big(to_mpq() + o.to_mpq());
    return *this;
  }
  if (den_ == o.den_) {
    set_small_or_big(static_cast<__int128>(num_) + o.num_, den_);
  } else {
    set_small_or_big(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                     static_cast<__int128>(den_) * o.den_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (!field_.is_rational()) {
    num_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(num_) * static_cast<std::uint64_t>(o.num_) %
                                     field_.characteristic());
    return *this;
  }
  if (big_ || o.big_) {
    set_big(to_mpq() * o.to_mpq());
    return *this;
  }
  set_small_or_big(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  if (o.is_zero()) throw DivideByZero("division by zero");
  return *this *= o.inverse();
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  check_same_field(a);
  check_same_field(b);
  if (!field_.is_rational()) {
    std::uint64_t p = field_.characteristic();
    num_ = static_cast<std::int64_t>((static_cast<std::uint64_t>(num_) +
                                      static_cast<std::uint64_t>(a.num_) * static_cast<std::uint64_t>(b.num_)) %
                                     p);
    return;
  }
  *this += a * b;
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  if (a.big_ || b.big_) return a.to_mpq() == b.to_mpq();
  return a.num_ == b.num_ && a.den_ == b.den_;
}

Scalar Scalar::reduce_mod(FieldSpec target) const {
  if (field_ == target) return *this;
  if (!field_.is_rational()) throw FieldMismatch("can only reduce rational scalars");
  return from_mpq(to_mpq(), target);
}

std::string Scalar::to_string() const {
  if (!field_.is_rational()) return std::to_string(num_);
  if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::parse(const std::string& text, FieldSpec f) {
  auto slash = text.find('/');
  if (f.is_rational()) {
    mpq_class q;
    try {
      if (slash == std::string::npos) {
        q = mpq_class(mpz_class(text), 1);
      } else {
        q = mpq_class(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
      }
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("malformed rational: " + text);
    }
    if (q.get_den() == 0) throw DivideByZero("zero denominator in " + text);
    Scalar s(f);
    s.set_big(q);
    return s;
  }
  if (slash != std::string::npos) throw std::invalid_argument("finite-field scalar must be a residue: " + text);
  try {
    return from_mpq(mpq_class(mpz_class(text)), f);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed residue: " + text);
  }
}

Scalar embed_integer(std::int64_t n, FieldSpec f) { return Scalar::from_integer(n, f); }

Scalar arith(const Scalar& a, const Scalar& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::div:
      return a / b;
  }
  throw std::logic_error("unknown arithmetic op");
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace spinlab
