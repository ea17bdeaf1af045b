#include "stmod/meataxe.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "stmod/error.hpp"
#include "stmod/polynomial.hpp"
#include "stmod/rng.hpp"

namespace stmod {

namespace {

constexpr std::size_t kMaxLines = 400;
constexpr std::size_t kPoolSize = 16;
constexpr int kQuickSplits = 8;
constexpr int kRandomIsoTries = 30;
constexpr std::uint64_t kExhaustiveIso = 4096;

Matrix random_combination(const std::vector<Matrix>& basis, Rng& rng) {
  const Field& f = basis[0].field();
  Matrix m(f, basis[0].rows(), basis[0].cols());
  for (const auto& b : basis) {
    const Elem c = static_cast<Elem>(rng.uniform(f.q()));
    if (c != 0) m.add_scaled(b, c);
  }
  return m;
}

std::vector<Matrix> transposes(const std::vector<Matrix>& gens) {
  std::vector<Matrix> t;
  for (const auto& g : gens) t.push_back(g.transpose());
  return t;
}

enum class LineScan { Proper, AllFull, TooMany };

// Spins one vector per line of N, regarded as a vector space over
// L = F[theta] restricted to N (theta acts on N with irreducible minimal
// polynomial of degree d). Vectors on one L-line spin to the same subspace.
LineScan scan_lines(const MatrixRep& r, const Matrix& theta, const Matrix& n, std::size_t d, Matrix& found) {
  const Field& f = r.field;
  std::vector<std::vector<Vector>> lbasis;
  EchelonBasis acc(f, r.dim);
  for (std::size_t i = 0; i < n.rows(); ++i) {
    if (acc.contains(n.row(i))) continue;
    std::vector<Vector> powers{Vector(n.row(i).begin(), n.row(i).end())};
    for (std::size_t k = 1; k < d; ++k) powers.push_back(theta.apply(powers.back()));
    for (const auto& v : powers) acc.insert(v);
    lbasis.push_back(std::move(powers));
  }
  const std::size_t t = lbasis.size();
  std::uint64_t big_q = 1;
  for (std::size_t k = 0; k < d; ++k) big_q *= f.q();
  std::uint64_t count = 0, term = 1;
  for (std::size_t i = 0; i < t; ++i) {
    count += term;
    if (count > kMaxLines || term > kMaxLines) return LineScan::TooMany;
    term *= big_q;
  }
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t free = (t - 1 - i) * d;  // F-coordinates of the tail
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < free; ++k) total *= f.q();
    for (std::uint64_t code = 0; code < total; ++code) {
      Vector v = lbasis[i][0];
      std::uint64_t x = code;
      for (std::size_t j = i + 1; j < t; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          const Elem c = static_cast<Elem>(x % f.q());
          x /= f.q();
          if (c != 0) f.axpy(v, c, lbasis[j][k]);
        }
      Matrix s = spin_rep(r, Matrix(f, 1, r.dim, v));
      if (s.rows() < r.dim) {
        found = std::move(s);
        return LineScan::Proper;
      }
    }
  }
  return LineScan::AllFull;
}

Vector random_row_combination(const Matrix& rows, Rng& rng) {
  const Field& f = rows.field();
  Vector v(rows.cols(), 0);
  while (std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; })) {
    for (std::size_t i = 0; i < rows.rows(); ++i) f.axpy(v, static_cast<Elem>(rng.uniform(f.q())), rows.row(i));
  }
  return v;
}

}  // namespace

MatrixRep as_rep(const Module& m) { return {m.field(), m.dim(), m.gens()}; }

Matrix spin_rep(const MatrixRep& r, const Matrix& vectors) {
  EchelonBasis e(r.field, r.dim);
  std::deque<Vector> queue;
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    Vector v(vectors.row(i).begin(), vectors.row(i).end());
    if (e.insert(v)) queue.push_back(std::move(v));
  }
  while (!queue.empty() && !e.full()) {
    Vector v = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : r.gens) {
      Vector w = a.apply(v);
      if (e.insert(w)) queue.push_back(std::move(w));
    }
  }
  return e.rref_matrix();
}

MatrixRep subquotient_rep(const MatrixRep& r, const Matrix& u, const Matrix& w) {
  const Field& f = r.field;
  const std::size_t d = r.dim;
  EchelonBasis ew(f, d);
  for (std::size_t i = 0; i < w.rows(); ++i) ew.insert(w.row(i));
  EchelonBasis eu(f, d);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    Vector v(u.row(i).begin(), u.row(i).end());
    ew.reduce(v);
    eu.insert(v);
  }
  const Matrix reps = eu.rref_matrix();
  const std::size_t k = reps.rows();
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t c = 0;
    while (reps(i, c) == 0) ++c;
    piv[i] = c;
  }
  // coordinates of A r_j modulo W, read off at the pivots of the representatives
  MatrixRep out{f, k, {}};
  for (const auto& a : r.gens) {
    Matrix g(f, k, k);
    for (std::size_t j = 0; j < k; ++j) {
      Vector v = a.apply(reps.row(j));
      ew.reduce(v);
      for (std::size_t i = 0; i < k; ++i) g(i, j) = v[piv[i]];
    }
    out.gens.push_back(std::move(g));
  }
  return out;
}

std::optional<Matrix> find_submodule(const MatrixRep& r, Rng& rng, std::size_t budget) {
  const Field& f = r.field;
  const std::size_t n = r.dim;
  if (n <= 1) return std::nullopt;
  if (r.gens.empty()) {
    Matrix line(f, 1, n);
    line(0, 0) = 1;
    return line;
  }
  const std::vector<Matrix> tgens = transposes(r.gens);
  const MatrixRep dual_rep{f, n, tgens};
  std::vector<Matrix> pool = r.gens;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    if (pool.size() < kPoolSize) pool.push_back(pool[rng.uniform(pool.size())] * pool[rng.uniform(pool.size())]);
    Matrix theta(f, n, n);
    for (int k = 0; k < 3; ++k) theta.add_scaled(pool[rng.uniform(pool.size())], 1 + static_cast<Elem>(rng.uniform(f.q() - 1)));
    auto factors = poly_factor(charpoly(theta));
    std::stable_sort(factors.begin(), factors.end(),
                     [](const PolyFactor& a, const PolyFactor& b) { return a.factor.degree() < b.factor.degree(); });
    for (const auto& pf : factors) {
      const std::size_t d = static_cast<std::size_t>(pf.factor.degree());
      const Matrix a = pf.factor.eval(theta);
      const Matrix ker = kernel_basis(a);
      const Matrix at = a.transpose();
      const Matrix kert = kernel_basis(at);
      Matrix found;
      const LineScan s1 = scan_lines(r, theta, ker, d, found);
      if (s1 == LineScan::Proper) return found;
      const Matrix thetat = theta.transpose();
      LineScan s2 = LineScan::TooMany;
      if (s1 == LineScan::AllFull) {
        s2 = scan_lines(dual_rep, thetat, kert, d, found);
        if (s2 == LineScan::Proper) return kernel_basis(found);
        // Norton: every line of ker f(theta) and of its transpose spins to everything
        if (s2 == LineScan::AllFull) return std::nullopt;
      }
      // too many lines to be exhaustive; a random probe still often splits
      Matrix s = spin_rep(r, Matrix(f, 1, n, random_row_combination(ker, rng)));
      if (s.rows() < n) return s;
      Matrix sd = spin_rep(dual_rep, Matrix(f, 1, n, random_row_combination(kert, rng)));
      if (sd.rows() < n) return kernel_basis(sd);
    }
  }
  throw Undecided("MeatAxe budget exhausted without deciding irreducibility (dim " + std::to_string(n) + ")");
}

IrreducibilityResult is_irreducible(const Module& m, std::uint64_t seed) {
  require(m.dim() >= 1, "irreducibility of the zero module is undefined");
  Rng rng(seed);
  auto sub = find_submodule(as_rep(m), rng);
  if (!sub) return {true, std::nullopt};
  return {false, std::move(sub)};
}

std::vector<MatrixRep> composition_factor_reps(const MatrixRep& r, Rng& rng) {
  std::vector<MatrixRep> out;
  std::vector<MatrixRep> stack{r};
  while (!stack.empty()) {
    MatrixRep cur = std::move(stack.back());
    stack.pop_back();
    if (cur.dim == 0) continue;
    auto sub = find_submodule(cur, rng);
    if (!sub) {
      out.push_back(std::move(cur));
      continue;
    }
    const Matrix zero(cur.field, 0, cur.dim);
    stack.push_back(subquotient_rep(cur, Matrix::identity(cur.field, cur.dim), *sub));
    stack.push_back(subquotient_rep(cur, *sub, zero));
  }
  return out;
}

std::vector<Module> composition_factor_modules(const Module& m, Rng& rng) {
  std::vector<Module> out;
  for (auto& rep : composition_factor_reps(as_rep(m), rng)) {
    out.emplace_back(m.group_ptr(), m.field(), rep.dim, std::move(rep.gens), false);
  }
  return out;
}

EndomorphismAlgebra endomorphism_algebra(const Module& m) {
  EndomorphismAlgebra e;
  e.basis = hom_space(m, m);
  const std::size_t k = e.basis.size();
  // the basis is in reduced echelon form when flattened: coordinates are pivot entries
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& d = e.basis[i].data();
    std::size_t c = 0;
    while (d[c] == 0) ++c;
    piv[i] = c;
  }
  e.mult.assign(k, std::vector<Vector>(k, Vector(k, 0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Matrix prod = e.basis[i] * e.basis[j];
      for (std::size_t l = 0; l < k; ++l) e.mult[i][j][l] = prod.data()[piv[l]];
    }
  return e;
}

bool is_local_algebra(const Field& f, std::size_t dim, const std::vector<Matrix>& basis, Rng& rng) {
  if (basis.size() <= 1) return true;
  const auto factors = composition_factor_reps(MatrixRep{f, dim, basis}, rng);
  // E/J embeds in the product of the factor actions
  std::vector<Vector> rows(basis.size());
  for (const auto& fac : factors)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const auto& d = fac.gens[b].data();
      rows[b].insert(rows[b].end(), d.begin(), d.end());
    }
  const std::size_t width = rows[0].size();
  const std::size_t semisimple_dim = rank(Matrix::from_rows(f, width, rows));
  return std::all_of(factors.begin(), factors.end(),
                     [&](const MatrixRep& fac) { return fac.dim == semisimple_dim; });
}

namespace {

struct Splitter {
  std::uint64_t seed;
  std::size_t budget;
  Rng rng;
  std::vector<Summand> out;

  void run(const Module& m, const Matrix& embed) {
    if (m.dim() == 0) return;
    const auto end = hom_space(m, m);
    if (end.size() == 1) {
      out.push_back({m, embed, 0, true});
      return;
    }
    auto try_split = [&]() -> std::optional<std::pair<Matrix, Matrix>> {
      const Matrix fn = power(random_combination(end, rng), m.dim());
      Matrix k = row_space(kernel_basis(fn));
      if (k.rows() == 0 || k.rows() == m.dim()) return std::nullopt;
      return std::pair{std::move(k), column_space(fn)};
    };
    std::optional<std::pair<Matrix, Matrix>> split;
    for (int t = 0; t < kQuickSplits && !split; ++t) split = try_split();
    if (!split) {
      if (is_local_algebra(m.field(), m.dim(), end, rng)) {
        out.push_back({m, embed, 0, true});
        return;
      }
      for (std::size_t t = kQuickSplits; t < budget && !split; ++t) split = try_split();
      if (!split) {
        throw Undecided("decomposition budget exhausted on a summand of dim " + std::to_string(m.dim()) +
                        " whose endomorphism ring is not local");
      }
    }
    auto a = submodule(m, split->first);
    auto b = submodule(m, split->second);
    run(a.module, embed * a.lift);
    run(b.module, embed * b.lift);
  }
};

}  // namespace

Decomposition decompose(const Module& m, std::uint64_t seed, std::size_t budget) {
  require(m.dim() <= 1000, "decompose is limited to dimension 1000");
  Splitter s{seed, budget, Rng(seed), {}};
  s.run(m, Matrix::identity(m.field(), m.dim()));
  Decomposition d;
  d.seed = seed;
  d.summands = std::move(s.out);
  for (std::size_t i = 0; i < d.summands.size(); ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < d.classes.size() && !placed; ++c) {
      auto& [rep, mult] = d.classes[c];
      if (is_isomorphic_indecomposable(d.summands[rep].module, d.summands[i].module).isomorphic) {
        d.summands[i].iso_class = c;
        ++mult;
        placed = true;
      }
    }
    if (!placed) {
      d.summands[i].iso_class = d.classes.size();
      d.classes.emplace_back(i, 1);
    }
  }
  d.witness = Matrix(m.field(), m.dim(), 0);
  for (const auto& sm : d.summands) d.witness = Matrix::hstack(d.witness, sm.embed);
  return d;
}

IsoResult is_isomorphic_indecomposable(const Module& a, const Module& b) {
  require(a.same_context(b), "modules over different groups or fields");
  if (a.dim() != b.dim()) return {false, std::nullopt};
  if (a.dim() == 0) return {true, Matrix(a.field(), 0, 0)};
  const auto fs = hom_space(a, b);
  if (fs.empty()) return {false, std::nullopt};
  Rng rng(0x69736f);
  for (int t = 0; t < 10; ++t) {
    Matrix f = random_combination(fs, rng);
    if (rank(f) == a.dim()) return {true, std::move(f)};
  }
  const auto gs = hom_space(b, a);
  for (const auto& f : fs)
    for (const auto& g : gs)
      if (rank(g * f) == a.dim()) return {true, f};
  return {false, std::nullopt};
}

IsoResult is_isomorphic(const Module& a, const Module& b, std::uint64_t seed) {
  require(a.same_context(b), "modules over different groups or fields");
  if (a.dim() != b.dim()) return {false, std::nullopt};
  const std::size_t n = a.dim();
  if (n == 0) return {true, Matrix(a.field(), 0, 0)};
  const auto fs = hom_space(a, b);
  const std::size_t e = hom_dim(a, a);
  if (fs.size() != e || hom_dim(b, b) != e || hom_dim(b, a) != e) return {false, std::nullopt};
  Rng rng(seed ^ 0x69736f);
  for (int t = 0; t < kRandomIsoTries; ++t) {
    Matrix f = random_combination(fs, rng);
    if (rank(f) == n) return {true, std::move(f)};
  }
  const Field& field = a.field();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < fs.size() && total <= kExhaustiveIso; ++i) total *= field.q();
  if (total <= kExhaustiveIso) {
    for (std::uint64_t code = 1; code < total; ++code) {
      Matrix f(field, n, n);
      std::uint64_t x = code;
      for (const auto& basis : fs) {
        const Elem c = static_cast<Elem>(x % field.q());
        x /= field.q();
        if (c != 0) f.add_scaled(basis, c);
      }
      if (rank(f) == n) return {true, std::move(f)};
    }
    return {false, std::nullopt};
  }
  const Decomposition da = decompose(a, seed), db = decompose(b, seed);
  if (da.summands.size() != db.summands.size()) return {false, std::nullopt};
  std::vector<bool> used(db.summands.size(), false);
  // block matrix from the sum of a's summands to the sum of b's summands
  std::vector<std::size_t> offs_b{0};
  for (const auto& s : db.summands) offs_b.push_back(offs_b.back() + s.module.dim());
  Matrix phi(field, n, n);
  std::size_t off_a = 0;
  for (const auto& sa : da.summands) {
    bool matched = false;
    for (std::size_t j = 0; j < db.summands.size() && !matched; ++j) {
      if (used[j]) continue;
      auto r = is_isomorphic_indecomposable(sa.module, db.summands[j].module);
      if (r.isomorphic) {
        used[j] = true;
        phi.set_block(offs_b[j], off_a, *r.witness);
        matched = true;
      }
    }
    if (!matched) return {false, std::nullopt};
    off_a += sa.module.dim();
  }
  Matrix w = db.witness * phi * *inverse(da.witness);
  ensure(is_equivariant(a, b, w) && rank(w) == n, "assembled isomorphism is not an isomorphism");
  return {true, std::move(w)};
}

}  // namespace stmod
