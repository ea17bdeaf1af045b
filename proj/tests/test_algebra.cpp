#include <set>

#include "doctest.h"
#include "stmod/error.hpp"
#include "stmod/field.hpp"
#include "stmod/matrix.hpp"
#include "stmod/polynomial.hpp"
#include "stmod/rng.hpp"

using namespace stmod;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Elem>(rng.uniform(f.q()));
  return m;
}

// Brute-force irreducibility: no monic factor of degree <= n/2.
bool irreducible_by_trial(const Polynomial& f) {
  const Field& F = f.field();
  const int n = f.degree();
  for (int d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= F.q();
    for (std::uint64_t code = 0; code < count; ++code) {
      Vector c(d + 1, 0);
      std::uint64_t x = code;
      for (int i = 0; i < d; ++i) {
        c[i] = static_cast<Elem>(x % F.q());
        x /= F.q();
      }
      c[d] = 1;
      if ((f % Polynomial(F, c)).is_zero()) return false;
    }
  }
  return n >= 1;
}

}  // namespace

TEST_CASE("field_create chooses the smallest modulus") {
  auto f3 = Field::create(3, 1);
  CHECK(f3.q() == 3);
  CHECK(f3.spec().modulus == std::vector<std::uint32_t>{0, 1});
  auto f4 = Field::create(2, 2);
  CHECK(f4.spec().modulus == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(Field::create(2, 1).q() == 2);
  CHECK_THROWS_AS(Field::create(4, 1), InvalidArgument);

  // oracle: enumerate monic polynomials in lexicographic order and take the
  // first one without roots or quadratic factors
  for (auto [p, m] : {std::pair{2u, 3u}, {3u, 2u}, {2u, 4u}, {5u, 2u}, {3u, 3u}}) {
    auto prime = Field::create(p, 1);
    std::uint64_t total = 1;
    for (unsigned i = 0; i < m; ++i) total *= p;
    std::vector<std::uint32_t> expected;
    // constant term most significant in lexicographic order
    for (std::uint64_t code = 0; code < total && expected.empty(); ++code) {
      Vector c(m + 1, 0);
      std::uint64_t x = code;
      for (unsigned i = m; i-- > 0;) {
        c[i] = static_cast<Elem>(x % p);
        x /= p;
      }
      c[m] = 1;
      Polynomial poly(prime, c);
      if (irreducible_by_trial(poly)) expected.assign(c.begin(), c.end());
    }
    CHECK(Field::create(p, m).spec().modulus == expected);
  }
}

TEST_CASE("field axioms, exhaustive for small q") {
  for (auto [p, m] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}, {2u, 4u}, {13u, 1u}}) {
    auto f = Field::create(p, m);
    const Elem q = f.q();
    for (Elem a = 0; a < q; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Elem b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (Elem c = 0; c < q; ++c) {
          REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("large fields agree with schoolbook arithmetic") {
  // GF(3^7) uses log tables; compare against polynomial multiplication
  auto f = Field::create(3, 7);
  auto prime = Field::create(3, 1);
  Polynomial mod(prime, Vector(f.spec().modulus.begin(), f.spec().modulus.end()));
  Rng rng(7);
  for (int t = 0; t < 300; ++t) {
    Elem a = static_cast<Elem>(rng.uniform(f.q())), b = static_cast<Elem>(rng.uniform(f.q()));
    auto ca = f.coeffs(a), cb = f.coeffs(b);
    Polynomial pa(prime, Vector(ca.begin(), ca.end())), pb(prime, Vector(cb.begin(), cb.end()));
    Polynomial prod = (pa * pb) % mod;
    std::vector<std::uint32_t> pc(7, 0);
    for (std::size_t i = 0; i < prod.coeffs().size(); ++i) pc[i] = prod.coeffs()[i];
    CHECK(f.mul(a, b) == f.from_coeffs(pc));
  }
}

TEST_CASE("frobenius fixes exactly the prime field") {
  for (auto [p, m] : {std::pair{2u, 2u}, {2u, 4u}, {2u, 8u}, {3u, 2u}, {3u, 4u}, {5u, 2u}, {7u, 2u}, {13u, 2u}}) {
    auto f = Field::create(p, m);
    std::set<Elem> fixed;
    for (Elem a = 0; a < f.q(); ++a) {
      CHECK(f.frobenius(f.add(a, 1)) == f.add(f.frobenius(a), 1));
      if (f.frobenius(a) == a) fixed.insert(a);
    }
    std::set<Elem> prime;
    for (long long i = 0; i < p; ++i) prime.insert(f.from_int(i));
    CHECK(fixed == prime);
  }
}

TEST_CASE("splitting_degree") {
  CHECK(splitting_degree(2, 3) == 2);
  CHECK(splitting_degree(3, 2) == 1);
  CHECK(splitting_degree(2, 4) == 1);
  CHECK(splitting_degree(5, 5) == 1);
  CHECK(splitting_degree(3, 15) == 4);
  // oracle: GF(p^d) has an element of order n' iff n' | p^d - 1
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint64_t n = 1; n <= 30; ++n) {
      std::uint64_t np = n;
      while (np % p == 0) np /= p;
      std::uint32_t d = 1;
      std::uint64_t pd = p;
      while ((pd - 1) % np != 0) {
        ++d;
        pd *= p;
      }
      CHECK(splitting_degree(p, n) == d);
    }
  }
}

TEST_CASE("field embedding is a ring homomorphism") {
  auto small = Field::create(2, 2);
  auto big = Field::create(2, 4);
  FieldEmbedding e(small, big);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      CHECK(e(small.add(a, b)) == big.add(e(a), e(b)));
      CHECK(e(small.mul(a, b)) == big.mul(e(a), e(b)));
    }
  CHECK_THROWS_AS(FieldEmbedding(Field::create(2, 3), big), InvalidArgument);
}

TEST_CASE("rref and ranks") {
  auto f2 = Field::create(2);
  CHECK(rank(Matrix::identity(f2, 4)) == 4);
  CHECK(rank(Matrix(f2, 3, 5)) == 0);
  auto m = Matrix::from_ints(f2, 2, 2, {1, 1, 1, 1});
  auto r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<std::size_t>{0});

  Rng rng(3);
  for (auto f : {Field::create(2), Field::create(3), Field::create(2, 2), Field::create(5, 2)}) {
    for (int t = 0; t < 30; ++t) {
      auto a = random_matrix(f, 1 + rng.uniform(7), 1 + rng.uniform(7), rng);
      auto rr = rref(a);
      CHECK(rank(rr.reduced) == rr.rank);
      auto k = kernel_basis(a);
      CHECK(k.rows() + rr.rank == a.cols());
      for (std::size_t i = 0; i < k.rows(); ++i) {
        auto v = a.apply(k.row(i));
        for (auto x : v) CHECK(x == 0);
      }
      CHECK(rank(k) == k.rows());
    }
  }
}

TEST_CASE("kernel and intersection examples") {
  auto f2 = Field::create(2);
  CHECK(kernel_basis(Matrix::identity(f2, 3)).rows() == 0);
  CHECK(kernel_basis(Matrix(f2, 2, 3)).rows() == 3);
  auto k = kernel_basis(Matrix::from_ints(f2, 1, 2, {1, 1}));
  REQUIRE(k.rows() == 1);
  CHECK(k(0, 0) == 1);
  CHECK(k(0, 1) == 1);

  auto f3 = Field::create(3);
  auto l1 = Matrix::from_ints(f3, 1, 2, {1, 0});
  auto l2 = Matrix::from_ints(f3, 1, 2, {1, 1});
  CHECK(subspace_intersect(l1, l2).rows() == 0);
  CHECK(row_space(subspace_intersect(l1, l1)) == row_space(l1));

  auto a = Matrix::from_ints(f2, 2, 3, {1, 0, 0, 0, 1, 0});
  auto b = Matrix::from_ints(f2, 2, 3, {0, 1, 0, 0, 0, 1});
  auto i = subspace_intersect(a, b);
  CHECK(i.rows() == 1);
  CHECK(i == Matrix::from_ints(f2, 1, 3, {0, 1, 0}));

  Rng rng(11);
  auto f5 = Field::create(5);
  for (int t = 0; t < 40; ++t) {
    auto x = random_matrix(f5, rng.uniform(5), 6, rng);
    auto y = random_matrix(f5, rng.uniform(5), 6, rng);
    auto s = subspace_sum(x, y);
    auto in = subspace_intersect(x, y);
    CHECK(in.rows() == rank(x) + rank(y) - s.rows());
    // every intersection vector lies in both
    for (std::size_t r = 0; r < in.rows(); ++r) {
      CHECK(solve_left(x, in.row(r)).has_value());
      CHECK(solve_left(y, in.row(r)).has_value());
    }
  }
}

TEST_CASE("inverse, power, solve") {
  Rng rng(5);
  auto f = Field::create(3, 2);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(f, 5, 5, rng);
    auto inv = inverse(a);
    if (rank(a) == 5) {
      REQUIRE(inv.has_value());
      CHECK((a * *inv).is_identity());
    } else {
      CHECK(!inv.has_value());
    }
    CHECK(power(a, 5) == a * a * a * a * a);
    auto x = random_matrix(f, 1, 5, rng);
    auto b = (x * a);
    auto sol = solve_left(a, b.row(0));
    REQUIRE(sol.has_value());
    CHECK(Matrix(f, 1, 5, *sol) * a == b);
  }
}

TEST_CASE("kron and direct sum") {
  auto f = Field::create(5);
  Rng rng(2);
  auto a = random_matrix(f, 2, 2, rng), b = random_matrix(f, 3, 3, rng);
  auto c = random_matrix(f, 2, 2, rng), d = random_matrix(f, 3, 3, rng);
  CHECK(Matrix::kron(a, b) * Matrix::kron(c, d) == Matrix::kron(a * c, b * d));
  CHECK(Matrix::direct_sum(a, b) * Matrix::direct_sum(c, d) == Matrix::direct_sum(a * c, b * d));
}

TEST_CASE("poly_factor examples") {
  auto f2 = Field::create(2);
  auto fx = poly_factor(Polynomial::from_ints(f2, {0, 1, 1}));
  REQUIRE(fx.size() == 2);
  CHECK(fx[0].factor == Polynomial::from_ints(f2, {0, 1}));
  CHECK(fx[1].factor == Polynomial::from_ints(f2, {1, 1}));

  auto f3 = Field::create(3);
  auto g = poly_factor(Polynomial::from_ints(f3, {1, 0, 1}));
  REQUIRE(g.size() == 1);
  CHECK(g[0].factor.degree() == 2);

  auto f4 = Field::create(2, 2);
  auto h = poly_factor(Polynomial::from_ints(f4, {-1, 0, 0, 1}));
  REQUIRE(h.size() == 3);
  for (auto& pf : h) {
    CHECK(pf.factor.degree() == 1);
    CHECK(pf.multiplicity == 1);
  }
  CHECK_THROWS_AS(poly_factor(Polynomial(f2)), InvalidArgument);
}

TEST_CASE("poly_factor product and irreducibility, random") {
  Rng rng(17);
  for (auto f : {Field::create(2), Field::create(3), Field::create(2, 2), Field::create(5), Field::create(3, 2),
                 Field::create(2, 11)}) {
    for (int t = 0; t < 25; ++t) {
      // products of random factors with repeats to exercise squarefree logic
      Polynomial poly = Polynomial::constant(f, 1 + static_cast<Elem>(rng.uniform(f.q() - 1)));
      const int parts = 1 + static_cast<int>(rng.uniform(4));
      for (int i = 0; i < parts; ++i) {
        Vector c(1 + rng.uniform(4), 0);
        for (auto& x : c) x = static_cast<Elem>(rng.uniform(f.q()));
        c.push_back(1);
        Polynomial piece(f, c);
        const int rep = 1 + static_cast<int>(rng.uniform(f.p() + 2));
        for (int r = 0; r < rep; ++r) poly = poly * piece;
      }
      auto fac = poly_factor(poly);
      Polynomial prod = Polynomial::constant(f, 1);
      for (auto& pf : fac) {
        CHECK(is_irreducible(pf.factor));
        if (f.q() <= 5 && pf.factor.degree() <= 6) CHECK(irreducible_by_trial(pf.factor));
        CHECK(pf.factor.leading() == 1);
        for (unsigned r = 0; r < pf.multiplicity; ++r) prod = prod * pf.factor;
      }
      CHECK(prod == poly.monic());
      for (std::size_t i = 1; i < fac.size(); ++i) CHECK(fac[i - 1].factor != fac[i].factor);
    }
  }
}

TEST_CASE("charpoly") {
  Rng rng(23);
  for (auto f : {Field::create(2), Field::create(3, 2), Field::create(7)}) {
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 1 + rng.uniform(7);
      auto a = random_matrix(f, n, n, rng);
      auto cp = charpoly(a);
      CHECK(cp.degree() == static_cast<int>(n));
      CHECK(cp.leading() == 1);
      CHECK(cp.eval(a).is_zero());  // Cayley-Hamilton
      // oracle: det(a) = (-1)^n cp(0); compare against det of a via rank when singular
      if (rank(a) < n) CHECK(cp.coeff(0) == 0);
      else CHECK(cp.coeff(0) != 0);
    }
  }
  auto f5 = Field::create(5);
  auto diag = Matrix::from_ints(f5, 3, 3, {2, 0, 0, 0, 2, 0, 0, 0, 3});
  // (x-2)^2 (x-3)
  CHECK(charpoly(diag) == Polynomial::from_ints(f5, {-2, 1}) * Polynomial::from_ints(f5, {-2, 1}) *
                              Polynomial::from_ints(f5, {-3, 1}));
}
