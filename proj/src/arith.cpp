#include "k3cert/arith.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace k3cert::arith {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

Integer from_u64(u64 v) {
  Integer r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin_round(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 m = 64;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

// x mod m in [0, m).
u64 mod_u64(const Integer& x, u64 m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), from_u64(m).get_mpz_t());
  return to_u64(r);
}

// Strips p from a nonzero integer, returning the exponent.
long strip_prime(Integer& x, u64 p) {
  Integer pp = from_u64(p);
  return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

void require_prime(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("expected a prime, got " + std::to_string(p));
}

// Integer in the same square class as the nonzero rational x.
Integer class_integer(const Rat& x) { return x.get_num() * x.get_den(); }

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    if (!miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return is_prime(to_u64(n));
}

u64 to_u64(const Integer& n) {
  Integer a = abs(n);
  if (mpz_sizeinbase(a.get_mpz_t(), 2) > 64) {
    throw std::domain_error("integer exceeds the 64-bit factorization bound: " + a.get_str());
  }
  u64 v = 0;
  mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, a.get_mpz_t());
  return v;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("cannot factor zero");
  std::vector<u64> primes;
  for (u64 p : {2ULL, 3ULL, 5ULL}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  for (u64 p = 7; p < 1000 && p * p <= n; p += 2) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, int>> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

long Valuation::value() const {
  if (!finite_) throw std::logic_error("value() of an infinite valuation");
  return value_;
}

Valuation operator+(Valuation a, Valuation b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinity();
  return Valuation(a.value_ + b.value_);
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  return a.value_ <=> b.value_;
}

Place Place::finite(u64 p) {
  require_prime(p);
  Place v;
  v.infinite_ = false;
  v.p_ = p;
  return v;
}

u64 Place::prime() const {
  if (infinite_) throw std::logic_error("prime() of the real place");
  return p_;
}

std::string Place::to_string() const { return infinite_ ? "inf" : std::to_string(p_); }

Place Place::parse(std::string_view token) {
  if (token == "inf" || token == "infinity" || token == "oo") return infinite();
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("bad place token '" + std::string(token) + "'");
  }
  return finite(to_u64(Integer(std::string(token))));
}

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  return a.p_ <=> b.p_;
}

SquareClass SquareClass::operator*(const SquareClass& other) const {
  Integer g = gcd(squarefree, other.squarefree);
  return SquareClass{sign * other.sign, (squarefree / g) * (other.squarefree / g)};
}

Valuation val_p(const Rat& x, u64 p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  Integer num = x.get_num();
  Integer den = x.get_den();
  return Valuation(strip_prime(num, p) - strip_prime(den, p));
}

int legendre(const Integer& a, u64 p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre requires an odd prime modulus");
  u64 r = mod_u64(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

Br2Class hilbert(const Rat& a, const Rat& b, const Place& v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
  if (v.is_infinite()) return Br2Class{(a < 0 && b < 0) ? 1u : 0u};

  const u64 p = v.prime();
  Integer u = class_integer(a);
  Integer w = class_integer(b);
  const long alpha = strip_prime(u, p) % 2;
  const long beta = strip_prime(w, p) % 2;

  unsigned bit = 0;
  if (p == 2) {
    const u64 u8 = mod_u64(u, 8);
    const u64 w8 = mod_u64(w, 8);
    auto eps = [](u64 r) -> unsigned { return ((r - 1) / 2) & 1; };
    auto omega = [](u64 r) -> unsigned { return ((r * r - 1) / 8) & 1; };
    bit = (eps(u8) & eps(w8)) ^ (alpha ? omega(w8) : 0u) ^ (beta ? omega(u8) : 0u);
  } else {
    const unsigned eps_p = ((p - 1) / 2) & 1;
    bit = (alpha && beta) ? eps_p : 0u;
    if (beta && legendre(u, p) == -1) bit ^= 1;
    if (alpha && legendre(w, p) == -1) bit ^= 1;
  }
  return Br2Class{bit};
}

SquareClass square_class(const Rat& x) {
  if (x == 0) throw std::invalid_argument("square class of zero");
  std::map<u64, int> exponents;
  for (const auto& [p, e] : factorize(to_u64(x.get_num()))) exponents[p] += e;
  for (const auto& [p, e] : factorize(to_u64(x.get_den()))) exponents[p] += e;
  SquareClass c;
  c.sign = x < 0 ? -1 : 1;
  c.squarefree = 1;
  for (const auto& [p, e] : exponents) {
    if (e % 2 != 0) c.squarefree *= from_u64(p);
  }
  return c;
}

bool is_local_square(const Rat& x, u64 p) {
  require_prime(p);
  if (x == 0) return false;
  Integer u = class_integer(x);
  if (strip_prime(u, p) % 2 != 0) return false;
  if (p == 2) return mod_u64(u, 8) == 1;
  return legendre(u, p) == 1;
}

std::set<u64> prime_support(const Rat& x) {
  std::set<u64> out;
  if (x == 0) return out;
  for (const auto& f : factorize(to_u64(x.get_num()))) out.insert(f.first);
  for (const auto& f : factorize(to_u64(x.get_den()))) out.insert(f.first);
  return out;
}

u64 next_progression_prime(u64 p, std::int64_t x) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("next_progression_prime requires an odd prime modulus");
  const std::int64_t sp = static_cast<std::int64_t>(p);
  const std::int64_t residue = ((x % sp) + sp) % sp;
  if (residue == 0) throw std::invalid_argument("residue must be coprime to the modulus");
  // CRT: the unique class mod 4p that is residue mod p and 3 mod 4.
  u64 start = 0;
  for (u64 r = static_cast<u64>(residue); r < 4 * p; r += p) {
    if (r % 4 == 3) {
      start = r;
      break;
    }
  }
  for (u64 q = start;; q += 4 * p) {
    if (q > std::numeric_limits<u64>::max() - 4 * p) throw std::overflow_error("prime search overflowed");
    if (is_prime(q)) return q;
  }
}

u64 find_p2(u64 p1) {
  if (p1 == 2 || !is_prime(p1)) throw std::invalid_argument("find_p2 requires an odd prime");
  const int target = (p1 % 4 == 3) ? 1 : -1;
  for (u64 q = 3;; q += 4) {
    if (q == p1 || !is_prime(q)) continue;
    if (legendre(from_u64(q), p1) == target) return q;
  }
}

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto to_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s));
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_int(num)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Rat r;
  if (slash == std::string_view::npos) {
    r = Rat(to_int(num));
  } else {
    std::string_view den = text.substr(slash + 1);
    if (!is_int(den)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer d = to_int(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    r = Rat(to_int(num), d);
    r.canonicalize();
  }
  return r;
}

}  // namespace k3cert::arith
