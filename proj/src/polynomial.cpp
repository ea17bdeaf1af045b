#include "stmod/polynomial.hpp"

#include <algorithm>

#include "stmod/error.hpp"
#include "stmod/rng.hpp"

namespace stmod {

Polynomial::Polynomial(Field f, Vector coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::constant(const Field& f, Elem c) { return Polynomial(f, Vector{c}); }
Polynomial Polynomial::x(const Field& f) { return Polynomial(f, Vector{0, 1}); }

Polynomial Polynomial::monomial(const Field& f, Elem c, std::size_t degree) {
  Vector v(degree + 1, 0);
  v[degree] = c;
  return Polynomial(f, std::move(v));
}

Polynomial Polynomial::from_ints(const Field& f, const std::vector<long long>& coeffs) {
  Vector v;
  v.reserve(coeffs.size());
  for (auto c : coeffs) v.push_back(f.from_int(c));
  return Polynomial(f, std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(leading()));
}

Polynomial Polynomial::derivative() const {
  Vector d;
  for (std::size_t i = 1; i < c_.size(); ++i) {
    d.push_back(field_.mul(field_.from_int(static_cast<long long>(i % field_.p())), c_[i]));
  }
  return Polynomial(field_, std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Vector r(std::max(c_.size(), o.c_.size()), 0);
  std::copy(c_.begin(), c_.end(), r.begin());
  field_.axpy(std::span<Elem>(r.data(), o.c_.size()), 1, o.c_);
  return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o.scaled(field_.neg(1)); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial(field_);
  Vector r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    field_.axpy(std::span<Elem>(r.data() + i, o.c_.size()), c_[i], o.c_);
  }
  return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::scaled(Elem c) const {
  Vector r = c_;
  field_.scale(r, c);
  return Polynomial(field_, std::move(r));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw InvalidArgument("polynomial division by zero");
  if (degree() < d.degree()) return {Polynomial(field_), *this};
  Vector r = c_;
  const std::size_t dd = d.c_.size() - 1;
  Vector q(r.size() - dd, 0);
  const Elem linv = field_.inv(d.leading());
  for (std::size_t k = r.size(); k-- > dd;) {
    const Elem c = field_.mul(r[k], linv);
    q[k - dd] = c;
    if (c != 0) field_.axpy(std::span<Elem>(r.data() + (k - dd), dd + 1), field_.neg(c), d.c_);
  }
  r.resize(dd);
  return {Polynomial(field_, std::move(q)), Polynomial(field_, std::move(r))};
}

Elem Polynomial::eval(Elem x) const {
  Elem v = 0;
  for (std::size_t i = c_.size(); i-- > 0;) v = field_.add(field_.mul(v, x), c_[i]);
  return v;
}

Matrix Polynomial::eval(const Matrix& a) const {
  require(a.rows() == a.cols(), "polynomial evaluated at a non-square matrix");
  const std::size_t n = a.rows();
  Matrix r(a.field(), n, n);
  const Matrix id = Matrix::identity(a.field(), n);
  for (std::size_t i = c_.size(); i-- > 0;) {
    r = r * a;
    r.add_scaled(id, c_[i]);
  }
  return r;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
  const Field& f = a.field();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(f, 1), s1(f);
  Polynomial t0(f), t1 = Polynomial::constant(f, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Polynomial t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem li = f.inv(r0.leading());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

Polynomial powmod(const Polynomial& base, std::uint64_t e, const Polynomial& m) {
  const Field& f = base.field();
  Polynomial result = Polynomial::constant(f, 1) % m;
  Polynomial b = base % m;
  while (e > 0) {
    if (e & 1u) result = (result * b) % m;
    e >>= 1;
    if (e > 0) b = (b * b) % m;
  }
  return result;
}

bool is_irreducible(const Polynomial& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Field& F = f.field();
  const Polynomial g = f.monic();
  const Polynomial xp = Polynomial::x(F);
  Polynomial h = xp;
  for (int i = 1; i <= n / 2; ++i) {
    h = powmod(h, F.q(), g);
    if (gcd(g, h - xp).degree() > 0) return false;
  }
  return true;
}

namespace {

// c(x) = sum c_i x^{ip} -> sum c_i^{1/p} x^i
Polynomial pth_root(const Polynomial& c) {
  const Field& f = c.field();
  const std::uint64_t root_exp = f.q() / f.p();  // a^{q/p} is the p-th root in GF(q)
  Vector r;
  for (std::size_t i = 0; i < c.coeffs().size(); i += f.p()) r.push_back(f.pow(c.coeffs()[i], root_exp));
  return Polynomial(f, std::move(r));
}

std::vector<PolyFactor> squarefree(const Polynomial& f) {
  std::vector<PolyFactor> out;
  const Field& F = f.field();
  Polynomial d = f.derivative();
  if (d.is_zero()) {
    for (auto& pf : squarefree(pth_root(f))) out.push_back({pf.factor, pf.multiplicity * F.p()});
    return out;
  }
  Polynomial c = gcd(f, d);
  Polynomial w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    Polynomial y = gcd(w, c);
    Polynomial fac = (w / y).monic();
    if (fac.degree() > 0) out.push_back({fac, i});
    w = y;
    c = c / y;
    ++i;
  }
  c = c.monic();
  if (c.degree() > 0) {
    for (auto& pf : squarefree(pth_root(c))) out.push_back({pf.factor, pf.multiplicity * F.p()});
  }
  return out;
}

// Berlekamp splitting of a monic squarefree polynomial.
std::vector<Polynomial> berlekamp(const Polynomial& f) {
  const Field& F = f.field();
  const int n = f.degree();
  if (n <= 1) return {f};
  // row i of Q: coefficients of x^{q i} mod f
  const Polynomial xq = powmod(Polynomial::x(F), F.q(), f);
  Matrix qm(F, n, n);
  Polynomial cur = Polynomial::constant(F, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) qm(i, j) = cur.coeff(j);
    cur = (cur * xq) % f;
  }
  const Matrix b = qm - Matrix::identity(F, n);
  // v (Q - I) = 0
  const Matrix basis = kernel_basis(b.transpose());
  const std::size_t r = basis.rows();
  std::vector<Polynomial> factors{f};
  if (r == 1) return factors;

  auto try_split = [&](const Polynomial& v) {
    std::vector<Polynomial> next;
    bool changed = false;
    for (auto& h : factors) {
      if (h.degree() <= 1) {
        next.push_back(h);
        continue;
      }
      Polynomial g = gcd(h, v % h);
      if (g.degree() > 0 && g.degree() < h.degree()) {
        next.push_back(g);
        next.push_back((h / g).monic());
        changed = true;
      } else {
        next.push_back(h);
      }
    }
    factors = std::move(next);
    return changed;
  };

  if (F.q() <= 1024) {
    for (std::size_t k = 0; k < r && factors.size() < r; ++k) {
      Polynomial v(F, Vector(basis.row(k).begin(), basis.row(k).end()));
      if (v.degree() <= 0) continue;
      for (Elem c = 0; c < F.q() && factors.size() < r; ++c) {
        try_split(v - Polynomial::constant(F, c));
      }
    }
  } else {
    Rng rng(0x5eed);
    const std::uint32_t q = F.q();
    while (factors.size() < r) {
      Vector w(n, 0);
      for (std::size_t k = 0; k < r; ++k) {
        F.axpy(w, static_cast<Elem>(rng.uniform(q)), basis.row(k));
      }
      Polynomial v(F, w);
      if (F.p() == 2) {
        // absolute trace to GF(2), reduced per factor
        Polynomial t(F), pw = v;
        for (std::uint32_t j = 0; j < F.m(); ++j) {
          t = t + pw;
          pw = (pw * pw) % f;
        }
        try_split(t);
      } else {
        try_split(powmod(v, (q - 1) / 2, f) - Polynomial::constant(F, 1));
      }
    }
  }
  ensure(factors.size() == r, "Berlekamp splitting did not separate all factors");
  return factors;
}

bool factor_less(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.coeffs() < b.coeffs();
}

}  // namespace

std::vector<PolyFactor> poly_factor(const Polynomial& f) {
  if (f.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  std::vector<PolyFactor> out;
  if (f.degree() == 0) return out;
  for (const auto& sf : squarefree(f.monic())) {
    for (auto& g : berlekamp(sf.factor)) out.push_back({g, sf.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor != b.factor) return factor_less(a.factor, b.factor);
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

Polynomial charpoly(const Matrix& a) {
  require(a.rows() == a.cols(), "characteristic polynomial of a non-square matrix");
  const Field& f = a.field();
  const std::size_t n = a.rows();
  Polynomial result = Polynomial::constant(f, 1);
  EchelonBasis span(f, n);
  for (std::size_t j = 0; j < n && !span.full(); ++j) {
    Vector e(n, 0);
    e[j] = 1;
    if (span.contains(e)) continue;
    // semi-echelon chain: each row tracked by the polynomial producing it
    std::vector<Vector> rows;
    std::vector<std::size_t> pivs;
    std::vector<Polynomial> polys;
    Vector cur = e;
    for (std::size_t k = 0;; ++k) {
      Vector w = cur;
      Polynomial poly = Polynomial::monomial(f, 1, k);
      span.reduce(w);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Elem c = w[pivs[i]];
        if (c == 0) continue;
        f.axpy(w, f.neg(c), rows[i]);
        poly = poly - polys[i].scaled(c);
      }
      std::size_t piv = 0;
      while (piv < n && w[piv] == 0) ++piv;
      if (piv == n) {
        result = result * poly;
        break;
      }
      const Elem inv = f.inv(w[piv]);
      f.scale(w, inv);
      rows.push_back(std::move(w));
      pivs.push_back(piv);
      polys.push_back(poly.scaled(inv));
      cur = a.apply(cur);
    }
    for (auto& r : rows) span.insert(r);
  }
  return result;
}

}  // namespace stmod
