#include "stmod/field.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>

#include "stmod/error.hpp"

namespace stmod {

namespace detail {

struct FieldTables {
  FieldSpec spec;
  std::uint32_t q = 2;
  bool small = false;  // full q*q tables present
  std::vector<std::uint16_t> add_t, mul_t;
  std::vector<std::uint32_t> log_t, exp_t, neg_t, inv_t;
  std::vector<std::uint32_t> zech;  // odd p, large q, m > 1
  Elem prim = 1;
};

}  // namespace detail

namespace {

constexpr std::uint32_t kSmallTableOrder = 256;
constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

using Coeffs = std::vector<std::uint32_t>;

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t qt = r / nr;
    t -= qt * nt;
    std::swap(t, nt);
    r -= qt * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo f over GF(p); f need not be monic.
Coeffs poly_mod(Coeffs a, const Coeffs& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint32_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * f[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Coeffs poly_mul(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

Coeffs poly_gcd(Coeffs a, Coeffs b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree m is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= m/2.
bool irreducible_over_prime(const Coeffs& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  Coeffs h = {0, 1};
  for (std::size_t i = 1; i <= m / 2; ++i) {
    // h <- h^p mod f by square-and-multiply
    Coeffs acc = {1};
    Coeffs base = h;
    for (std::uint32_t e = p; e > 0; e >>= 1) {
      if (e & 1u) acc = poly_mod(poly_mul(acc, base, p), f, p);
      base = poly_mod(poly_mul(base, base, p), f, p);
    }
    h = acc;
    Coeffs d = h;
    if (d.size() < 2) d.resize(2, 0);
    d[1] = (d[1] + p - 1) % p;
    trim(d);
    Coeffs g = poly_gcd(f, d, p);
    if (g.size() > 1) return false;
  }
  return true;
}

Coeffs unpack(Elem a, std::uint32_t p, std::uint32_t m) {
  Coeffs c(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    c[i] = a % p;
    a /= p;
  }
  return c;
}

Elem pack(const Coeffs& c, std::uint32_t p, std::uint32_t m) {
  Elem v = 0;
  for (std::uint32_t i = m; i-- > 0;) v = v * p + (i < c.size() ? c[i] : 0);
  return v;
}

Elem digit_add(Elem a, Elem b, std::uint32_t p, std::uint32_t m) {
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    r += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return r;
}

Elem digit_neg(Elem a, std::uint32_t p, std::uint32_t m) {
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    r += ((p - a % p) % p) * scale;
    a /= p;
    scale *= p;
  }
  return r;
}

std::shared_ptr<const detail::FieldTables> build_tables(const FieldSpec& spec) {
  auto t = std::make_shared<detail::FieldTables>();
  t->spec = spec;
  const std::uint32_t p = spec.p, m = spec.m, q = spec.order();
  t->q = q;
  const Coeffs& f = spec.modulus;
  auto slow_mul = [&](Elem a, Elem b) {
    if (m == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p);
    return pack(poly_mod(poly_mul(unpack(a, p, m), unpack(b, p, m), p), f, p), p, m);
  };

  // primitive element: smallest packed value of order q-1
  Elem prim = 1;
  if (q > 2) {
    for (Elem g = 2; g < q; ++g) {
      std::uint32_t ord = 1;
      Elem x = g;
      while (x != 1) {
        x = slow_mul(x, g);
        ++ord;
      }
      if (ord == q - 1) {
        prim = g;
        break;
      }
    }
  }
  t->prim = prim;
  const std::uint32_t n = q - 1;
  t->exp_t.assign(2 * static_cast<std::size_t>(n), 0);
  t->log_t.assign(q, kNoLog);
  Elem x = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    t->exp_t[i] = x;
    t->exp_t[i + n] = x;
    t->log_t[x] = i;
    x = slow_mul(x, prim);
  }
  ensure(x == 1, "primitive element search failed");

  t->neg_t.resize(q);
  t->inv_t.assign(q, 0);
  for (Elem a = 0; a < q; ++a) {
    t->neg_t[a] = digit_neg(a, p, m);
    if (a != 0) t->inv_t[a] = t->exp_t[(n - t->log_t[a]) % n];
  }

  if (q <= kSmallTableOrder) {
    t->small = true;
    t->add_t.resize(static_cast<std::size_t>(q) * q);
    t->mul_t.resize(static_cast<std::size_t>(q) * q);
    for (Elem a = 0; a < q; ++a) {
      for (Elem b = 0; b < q; ++b) {
        t->add_t[a * q + b] = static_cast<std::uint16_t>(digit_add(a, b, p, m));
        t->mul_t[a * q + b] = static_cast<std::uint16_t>(
            (a == 0 || b == 0) ? 0 : t->exp_t[t->log_t[a] + t->log_t[b]]);
      }
    }
  } else if (p != 2 && m > 1) {
    t->zech.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      Elem s = digit_add(1, t->exp_t[i], p, m);
      t->zech[i] = (s == 0) ? kNoLog : t->log_t[s];
    }
  }
  return t;
}

// One table set per spec, shared process-wide.
std::shared_ptr<const detail::FieldTables> tables_for(const FieldSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>,
                  std::shared_ptr<const detail::FieldTables>>
      registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(spec.p, spec.modulus);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  auto t = build_tables(spec);
  registry.emplace(key, t);
  return t;
}

}  // namespace

std::uint32_t FieldSpec::order() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) q *= p;
  return static_cast<std::uint32_t>(q);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field() : Field(Field::create(2, 1)) {}

Field::Field(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}

Field Field::create(std::uint32_t p, std::uint32_t m) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (m < 1 || m > 16) throw InvalidArgument("extension degree must lie in [1, 16]");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw InvalidArgument("field order exceeds 2^16");
  }
  FieldSpec spec{p, m, {}};
  // enumerate (c0, c1, ..., c_{m-1}) lexicographically, c0 most significant
  const std::uint64_t count = q;
  for (std::uint64_t code = 0; code < count; ++code) {
    Coeffs f(m + 1, 0);
    std::uint64_t rest = code;
    for (std::uint32_t i = m; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    f[m] = 1;
    if (irreducible_over_prime(f, p)) {
      spec.modulus = f;
      return Field(tables_for(spec));
    }
  }
  throw InvariantViolation("no irreducible polynomial found");
}

Field Field::from_spec(const FieldSpec& spec) {
  if (!is_prime(spec.p)) throw InvalidArgument("field characteristic is not prime");
  if (spec.m < 1 || spec.m > 16) throw InvalidArgument("extension degree must lie in [1, 16]");
  if (spec.modulus.size() != spec.m + 1 || spec.modulus.back() != 1) {
    throw InvalidArgument("modulus must be monic of degree m");
  }
  if (static_cast<std::uint64_t>(spec.order()) > kMaxFieldOrder) throw InvalidArgument("field order exceeds 2^16");
  for (auto c : spec.modulus) {
    if (c >= spec.p) throw InvalidArgument("modulus coefficient out of range");
  }
  if (!irreducible_over_prime(spec.modulus, spec.p)) throw InvalidArgument("modulus is reducible");
  return Field(tables_for(spec));
}

const FieldSpec& Field::spec() const { return t_->spec; }
std::uint32_t Field::p() const { return t_->spec.p; }
std::uint32_t Field::m() const { return t_->spec.m; }
std::uint32_t Field::q() const { return t_->q; }

Elem Field::add(Elem a, Elem b) const {
  const auto& t = *t_;
  if (t.small) return t.add_t[a * t.q + b];
  if (t.spec.p == 2) return a ^ b;
  if (t.spec.m == 1) return (a + b) % t.spec.p;
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t n = t.q - 1;
  const std::uint32_t la = t.log_t[a], lb = t.log_t[b];
  const std::uint32_t z = t.zech[(lb + n - la) % n];
  if (z == kNoLog) return 0;
  return t.exp_t[(la + z) % n];
}

Elem Field::neg(Elem a) const { return t_->neg_t[a]; }

Elem Field::mul(Elem a, Elem b) const {
  const auto& t = *t_;
  if (t.small) return t.mul_t[a * t.q + b];
  if (a == 0 || b == 0) return 0;
  return t.exp_t[t.log_t[a] + t.log_t[b]];
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw InvalidArgument("division by zero in " + name());
  return t_->inv_t[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = t_->q - 1;
  return t_->exp_t[(static_cast<std::uint64_t>(t_->log_t[a]) * (e % n)) % n];
}

Elem Field::from_int(long long v) const {
  const long long p = t_->spec.p;
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const { return unpack(a, p(), m()); }

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != m()) throw InvalidArgument("coefficient vector has wrong length");
  for (auto v : c) {
    if (v >= p()) throw InvalidArgument("coefficient out of range");
  }
  return pack(Coeffs(c.begin(), c.end()), p(), m());
}

Elem Field::primitive() const { return t_->prim; }

std::uint64_t Field::order_of(Elem a) const {
  if (a == 0) throw InvalidArgument("zero has no multiplicative order");
  const std::uint64_t n = t_->q - 1;
  const std::uint64_t l = t_->log_t[a];
  std::uint64_t g = n, b = l;
  while (b != 0) {
    std::uint64_t r = g % b;
    g = b;
    b = r;
  }
  return n / g;
}

void Field::axpy(std::span<Elem> dst, Elem c, std::span<const Elem> src) const {
  if (c == 0) return;
  const auto& t = *t_;
  const std::size_t n = dst.size();
  if (t.small) {
    const std::uint32_t q = t.q;
    const std::uint16_t* mrow = t.mul_t.data() + static_cast<std::size_t>(c) * q;
    const std::uint16_t* add = t.add_t.data();
    if (t.spec.p == 2) {
      for (std::size_t k = 0; k < n; ++k) dst[k] ^= mrow[src[k]];
    } else {
      for (std::size_t k = 0; k < n; ++k) dst[k] = add[dst[k] * q + mrow[src[k]]];
    }
    return;
  }
  if (t.spec.m == 1) {
    const std::uint64_t p = t.spec.p;
    for (std::size_t k = 0; k < n; ++k) {
      dst[k] = static_cast<Elem>((dst[k] + static_cast<std::uint64_t>(c) * src[k]) % p);
    }
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (src[k] != 0) dst[k] = add(dst[k], mul(c, src[k]));
  }
}

void Field::scale(std::span<Elem> dst, Elem c) const {
  if (c == 1) return;
  for (auto& x : dst) x = mul(c, x);
}

std::string Field::name() const { return "GF(" + std::to_string(q()) + ")"; }

bool Field::operator==(const Field& o) const {
  return t_ == o.t_ || t_->spec == o.t_->spec;
}

std::uint32_t splitting_degree(std::uint32_t p, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("splitting_degree needs n >= 1");
  while (n % p == 0) n /= p;
  if (n == 1) return 1;
  std::uint64_t x = p % n;
  std::uint32_t d = 1;
  while (x != 1) {
    x = x * p % n;
    ++d;
  }
  return d;
}

FieldEmbedding::FieldEmbedding(const Field& from, const Field& to) : from_(from), to_(to) {
  if (from.p() != to.p() || to.m() % from.m() != 0) {
    throw InvalidArgument("no embedding " + from.name() + " -> " + to.name());
  }
  const auto& f = from.spec().modulus;
  // smallest root of f in the target field
  Elem root = 0;
  bool found = false;
  for (Elem r = 0; r < to.q() && !found; ++r) {
    Elem v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = to.add(to.mul(v, r), to.from_int(f[i]));
    if (v == 0) {
      root = r;
      found = true;
    }
  }
  ensure(found, "modulus has no root in the extension field");
  image_.resize(from.q());
  for (Elem a = 0; a < from.q(); ++a) {
    auto c = from.coeffs(a);
    Elem v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = to.add(to.mul(v, root), to.from_int(c[i]));
    image_[a] = v;
  }
}

}  // namespace stmod
