#include "stmod/blocks.hpp"

#include <algorithm>

#include "stmod/error.hpp"
#include "stmod/polynomial.hpp"

namespace stmod {

Vector CenterAlgebra::one() const {
  Vector v(dim(), 0);
  v[identity_class] = 1;
  return v;
}

Vector CenterAlgebra::mul(const Vector& x, const Vector& y) const {
  Vector r(dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j] == 0) continue;
      field.axpy(r, field.mul(x[i], y[j]), mult[i][j]);
    }
  }
  return r;
}

Vector CenterAlgebra::to_group_algebra(const Vector& x) const {
  Vector v(classes.class_of.size(), 0);
  for (std::size_t g = 0; g < v.size(); ++g) v[g] = x[classes.class_of[g]];
  return v;
}

CenterAlgebra center_algebra(const Group& g, const Field& f) {
  CenterAlgebra z{f, conjugacy_classes(g), {}, 0};
  const std::size_t c = z.dim();
  z.identity_class = z.classes.class_of[0];
  z.mult.assign(c, std::vector<Vector>(c, Vector(c, 0)));
  std::vector<std::uint64_t> count(g.order(), 0);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::fill(count.begin(), count.end(), 0);
      for (auto x : z.classes.classes[i])
        for (auto y : z.classes.classes[j]) ++count[g.mul(x, y)];
      // the product is central, so its coefficient is constant on classes
      for (std::size_t k = 0; k < c; ++k)
        z.mult[i][j][k] = f.from_int(static_cast<long long>(count[z.classes.representatives[k]] % f.p()));
    }
  return z;
}

Matrix center_basis(const Group& g, const Field& f) {
  const auto cc = conjugacy_classes(g);
  Matrix m(f, cc.classes.size(), g.order());
  for (std::size_t i = 0; i < cc.classes.size(); ++i)
    for (auto x : cc.classes[i]) m(i, x) = 1;
  return m;
}

Vector group_algebra_mul(const Group& g, const Field& f, const Vector& a, const Vector& b) {
  Vector r(g.order(), 0);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (a[x] == 0) continue;
    for (std::size_t y = 0; y < g.order(); ++y)
      if (b[y] != 0) {
        const std::size_t xy = g.mul(x, y);
        r[xy] = f.add(r[xy], f.mul(a[x], b[y]));
      }
  }
  return r;
}

namespace {

Vector zpow(const CenterAlgebra& z, Vector x, std::uint64_t e, const Vector& unit) {
  Vector r = unit;
  while (e) {
    if (e & 1) r = z.mul(r, x);
    e >>= 1;
    if (e) x = z.mul(x, x);
  }
  return r;
}

Vector evaluate(const CenterAlgebra& z, const Polynomial& poly, const Vector& y, const Vector& unit) {
  const Field& f = z.field;
  Vector r(z.dim(), 0);
  for (int d = poly.degree(); d >= 0; --d) {
    r = z.mul(r, y);
    f.axpy(r, poly.coeff(static_cast<std::size_t>(d)), unit);
  }
  return r;
}

// Minimal polynomial of y in the algebra with identity `unit`.
Polynomial minimal_polynomial(const CenterAlgebra& z, const Vector& y, const Vector& unit) {
  const Field& f = z.field;
  std::vector<Vector> powers{unit};
  while (true) {
    Vector next = z.mul(powers.back(), y);
    auto c = solve_left(Matrix::from_rows(f, z.dim(), powers), next);
    if (c) {
      Vector coeffs(powers.size() + 1, 0);
      for (std::size_t i = 0; i < powers.size(); ++i) coeffs[i] = f.neg((*c)[i]);
      coeffs.back() = 1;
      return Polynomial(f, coeffs);
    }
    powers.push_back(std::move(next));
  }
}

// Idempotents of the primary decomposition of mu at y (mu(y) = 0 exactly).
std::vector<Vector> crt_split(const CenterAlgebra& z, const Polynomial& mu, const Vector& y, const Vector& unit) {
  const auto factors = poly_factor(mu);
  std::vector<Vector> parts;
  if (factors.size() < 2) return parts;
  for (const auto& pf : factors) {
    Polynomial fj = Polynomial::constant(z.field, 1);
    for (unsigned k = 0; k < pf.multiplicity; ++k) fj = fj * pf.factor;
    const Polynomial gj = mu / fj;
    const auto eg = extended_gcd(fj, gj);
    ensure(eg.g.is_one(), "primary factors are not coprime");
    parts.push_back(evaluate(z, (eg.t * gj) % mu, y, unit));
  }
  return parts;
}

bool is_zero_vec(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

}  // namespace

BlockSet central_primitive_idempotents(const GroupAlgebra& a) {
  const Group& g = a.group();
  const Field& f = a.field();
  const CenterAlgebra z = center_algebra(g, f);
  const std::size_t c = z.dim();

  std::vector<Vector> work{z.one()}, done;
  while (!work.empty()) {
    const Vector e = std::move(work.back());
    work.pop_back();
    std::vector<Vector> basis_rows;
    for (std::size_t i = 0; i < c; ++i) {
      Vector zi(c, 0);
      zi[i] = 1;
      basis_rows.push_back(z.mul(e, zi));
    }
    const Matrix ez = row_space(Matrix::from_rows(f, c, basis_rows));
    if (ez.rows() == 1) {
      done.push_back(e);
      continue;
    }
    std::vector<Vector> parts;
    for (const auto& y : basis_rows) {
      parts = crt_split(z, minimal_polynomial(z, y, e), y, e);
      if (!parts.empty()) break;
    }
    if (parts.empty()) {
      // every basis element is primary; decide locality by the Frobenius-fixed part
      Matrix frob(f, ez.rows(), c);
      for (std::size_t r = 0; r < ez.rows(); ++r) {
        Vector b(ez.row(r).begin(), ez.row(r).end());
        Vector fb = zpow(z, b, f.q(), e);
        f.axpy(fb, f.neg(1), b);
        std::copy(fb.begin(), fb.end(), frob.row(r).begin());
      }
      const Matrix fixed_coords = kernel_basis(frob.transpose());
      ensure(fixed_coords.rows() >= 1, "Frobenius-fixed subalgebra lost the identity");
      if (fixed_coords.rows() > 1) {
        for (std::size_t r = 0; r < fixed_coords.rows() && parts.empty(); ++r) {
          Vector y(c, 0);
          for (std::size_t l = 0; l < ez.rows(); ++l) f.axpy(y, fixed_coords(r, l), ez.row(l));
          parts = crt_split(z, minimal_polynomial(z, y, e), y, e);
        }
        ensure(!parts.empty(), "non-local center part did not split");
      }
    }
    if (parts.empty()) {
      done.push_back(e);
      continue;
    }
    for (auto& p : parts) work.push_back(std::move(p));
  }

  // exact checks: idempotent, orthogonal, summing to 1, fixed by the p-th power map
  Vector sum(c, 0);
  for (std::size_t i = 0; i < done.size(); ++i) {
    ensure(z.mul(done[i], done[i]) == done[i], "block idempotent is not idempotent");
    ensure(zpow(z, done[i], f.p(), z.one()) == done[i], "block idempotent is not fixed by p-th powers");
    ensure(!is_zero_vec(done[i]), "zero block idempotent");
    for (std::size_t j = i + 1; j < done.size(); ++j)
      ensure(is_zero_vec(z.mul(done[i], done[j])), "block idempotents are not orthogonal");
    f.axpy(sum, 1, done[i]);
  }
  ensure(sum == z.one(), "block idempotents do not sum to 1");

  BlockSet out;
  const auto& simples = a.simples();
  for (const auto& x : done) {
    BlockIdempotent b;
    b.coeffs = z.to_group_algebra(x);
    Elem aug = 0;
    for (std::size_t i = 0; i < c; ++i)
      aug = f.add(aug, f.mul(x[i], f.from_int(static_cast<long long>(z.classes.classes[i].size() % f.p()))));
    b.augmentation = aug;
    for (std::size_t s = 0; s < simples.size(); ++s) {
      const Matrix act = a.element_action(b.coeffs, simples[s]);
      if (act.is_identity()) {
        b.simples.push_back(s);
      } else {
        ensure(act.is_zero(), "central idempotent acts on a simple module neither as 0 nor 1");
      }
    }
    ensure(!b.simples.empty(), "block without simple modules");
    out.blocks.push_back(std::move(b));
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const BlockIdempotent& x, const BlockIdempotent& y) { return x.simples[0] < y.simples[0]; });
  std::size_t principal_count = 0;
  for (std::size_t i = 0; i < out.blocks.size(); ++i) {
    if (out.blocks[i].augmentation == 1) {
      out.principal = i;
      ++principal_count;
    }
  }
  ensure(principal_count == 1, "expected exactly one block with augmentation 1");
  ensure(out.blocks[out.principal].simples[0] == 0, "principal block does not contain the trivial module");
  // the blocks partition the simple modules
  std::vector<int> seen(simples.size(), 0);
  for (const auto& b : out.blocks)
    for (auto s : b.simples) ++seen[s];
  ensure(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }), "blocks do not partition the simples");
  return out;
}

const BlockIdempotent& principal_block(const BlockSet& b) { return b.blocks.at(b.principal); }

std::size_t simples_in_block(const BlockIdempotent& e) { return e.simples.size(); }

bool lies_in_block(const GroupAlgebra& a, const Module& m, const BlockIdempotent& e) {
  if (m.dim() == 0) return true;
  const Matrix act = a.element_action(e.coeffs, m);
  ensure(act * act == act, "block idempotent does not act as an idempotent");
  const bool in = act.is_identity();
  const auto counts = a.composition_factors(m);
  bool factors_in = true;
  for (std::size_t s = 0; s < counts.size(); ++s)
    if (counts[s] > 0 && !std::binary_search(e.simples.begin(), e.simples.end(), s)) factors_in = false;
  ensure(in == factors_in, "block membership disagrees with the composition factors");
  return in;
}

SubQuotient block_component(const GroupAlgebra& a, const Module& m, const BlockIdempotent& e) {
  return submodule(m, column_space(a.element_action(e.coeffs, m)));
}

}  // namespace stmod
