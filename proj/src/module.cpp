#include "stmod/module.hpp"

#include <algorithm>
#include <deque>

#include "stmod/error.hpp"
#include "stmod/rng.hpp"

namespace stmod {

namespace {

constexpr std::size_t kVerifyPairs = 200;
constexpr std::size_t kCharacterWords = 500;

Vector random_vector(const Field& f, std::size_t n, Rng& rng) {
  Vector v(n);
  for (auto& x : v) x = static_cast<Elem>(rng.uniform(f.q()));
  return v;
}

bool all_zero(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

}  // namespace

Module::Module(GroupPtr group, Field field, std::size_t dim, std::vector<Matrix> gens, bool check)
    : d_(std::make_shared<Data>()) {
  require(group != nullptr, "module needs a group");
  require(gens.size() == group->generators().size(), "one action matrix per generator is required");
  for (const auto& a : gens) {
    require(a.rows() == dim && a.cols() == dim, "action matrix has the wrong shape");
    require(a.field() == field, "action matrix over the wrong field");
    require(rank(a) == dim, "generator action is not invertible");
  }
  d_->group = std::move(group);
  d_->field = std::move(field);
  d_->dim = dim;
  d_->gens = std::move(gens);
  d_->memo.resize(d_->group->order());
  if (check && dim > 0) {
    Rng rng(0x6d6f64);
    require(verify(kVerifyPairs, rng), "generator matrices do not define a group action");
  }
}

const Matrix& Module::action(std::size_t element) const {
  {
    std::lock_guard lock(d_->mutex);
    if (d_->memo[element]) return *d_->memo[element];
  }
  Matrix m = element == 0 ? Matrix::identity(d_->field, d_->dim)
                          : d_->gens[group().parent_gen(element)] * action(group().parent(element));
  std::lock_guard lock(d_->mutex);
  if (!d_->memo[element]) d_->memo[element] = std::make_unique<Matrix>(std::move(m));
  return *d_->memo[element];
}

Vector Module::act(std::size_t element, std::span<const Elem> v) const {
  {
    std::lock_guard lock(d_->mutex);
    if (d_->memo[element]) return d_->memo[element]->apply(v);
  }
  const auto w = group().word(element);
  Vector out(v.begin(), v.end());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = d_->gens[*it].apply(out);
  return out;
}

bool Module::verify(std::size_t pairs, Rng& rng) const {
  const std::size_t n = group().order();
  for (std::size_t t = 0; t < pairs; ++t) {
    const std::size_t g = rng.uniform(n), h = rng.uniform(n);
    const Vector v = random_vector(field(), dim(), rng);
    if (act(group().mul(g, h), v) != act(g, act(h, v))) return false;
  }
  return true;
}

bool Module::same_context(const Module& o) const {
  return (d_->group == o.d_->group || d_->group->generator_perms() == o.d_->group->generator_perms()) &&
         d_->field == o.d_->field;
}

bool is_equivariant(const Module& source, const Module& target, const Matrix& mat) {
  if (mat.rows() != target.dim() || mat.cols() != source.dim()) return false;
  for (std::size_t s = 0; s < source.gens().size(); ++s) {
    if (mat * source.gen(s) != target.gen(s) * mat) return false;
  }
  return true;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  require(f.target.dim() == g.source.dim(), "composition shape mismatch");
  return {f.source, g.target, g.mat * f.mat};
}

ModuleMap identity_map(const Module& m) { return {m, m, Matrix::identity(m.field(), m.dim())}; }

ModuleMap zero_map(const Module& source, const Module& target) {
  return {source, target, Matrix(source.field(), target.dim(), source.dim())};
}

Module regular_module(const GroupPtr& g, const Field& f) {
  const std::size_t n = g->order();
  std::vector<Matrix> gens;
  for (auto s : g->generators()) {
    Matrix a(f, n, n);
    for (std::size_t h = 0; h < n; ++h) a(g->mul(s, h), h) = 1;
    gens.push_back(std::move(a));
  }
  return Module(g, f, n, std::move(gens), false);
}

Module trivial_module(const GroupPtr& g, const Field& f) {
  return Module(g, f, 1, std::vector<Matrix>(g->generators().size(), Matrix::identity(f, 1)), false);
}

Module zero_module(const GroupPtr& g, const Field& f) {
  return Module(g, f, 0, std::vector<Matrix>(g->generators().size(), Matrix(f, 0, 0)), false);
}

Module one_dim_module(const GroupPtr& g, const Field& f, const std::vector<Elem>& chi) {
  require(chi.size() == g->generators().size(), "one scalar per generator is required");
  for (auto c : chi) require(c != 0 && c < f.q(), "character values must be nonzero field elements");
  auto value = [&](std::size_t e) {
    Elem v = 1;
    for (auto s : g->word(e)) v = f.mul(v, chi[s]);
    return v;
  };
  Rng rng(0x636861);
  for (std::size_t t = 0; t < kCharacterWords; ++t) {
    const std::size_t a = rng.uniform(g->order()), b = rng.uniform(g->order());
    require(value(g->mul(a, b)) == f.mul(value(a), value(b)), "scalars do not define a character");
  }
  std::vector<Matrix> gens;
  for (auto c : chi) gens.push_back(Matrix(f, 1, 1, {c}));
  return Module(g, f, 1, std::move(gens), false);
}

// Hom via a spun basis of M. Write M's basis as b_0..b_{m-1}, each either a
// seed or A_i b_j for an earlier b_j. A map is determined by the images of
// the seeds; the remaining pairs (i, j) give the linear constraints
// B_i phi(b_j) = phi(A_i b_j) = sum_l c_l phi(b_l).
std::vector<Matrix> hom_space(const Module& m, const Module& n) {
  require(m.same_context(n), "modules over different groups or fields");
  const Field& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  if (dm == 0 || dn == 0) return {};
  const std::size_t ng = m.gens().size();

  struct Origin {
    long seed;  // seed number, or -1
    std::size_t gen, from;
  };
  std::vector<Vector> basis;
  std::vector<Origin> origin;
  std::vector<std::vector<bool>> produced;  // produced[j][i]: A_i b_j became a basis vector
  EchelonBasis span(f, dm);
  Rng rng(0x686f6d ^ (dm * 131 + dn));
  std::size_t seeds = 0;
  std::size_t unit = 0;
  while (!span.full()) {
    Vector v;
    for (int attempt = 0; attempt < 4; ++attempt) {
      v = random_vector(f, dm, rng);
      if (!span.contains(v)) break;
      v.clear();
    }
    if (v.empty()) {
      for (; unit < dm; ++unit) {
        Vector e(dm, 0);
        e[unit] = 1;
        if (!span.contains(e)) {
          v = std::move(e);
          break;
        }
      }
    }
    span.insert(v);
    basis.push_back(v);
    origin.push_back({static_cast<long>(seeds++), 0, 0});
    produced.emplace_back(ng, false);
    for (std::size_t j = basis.size() - 1; j < basis.size(); ++j) {
      for (std::size_t i = 0; i < ng; ++i) {
        Vector w = m.gen(i).apply(basis[j]);
        if (span.insert(w)) {
          basis.push_back(std::move(w));
          origin.push_back({-1, i, j});
          produced.emplace_back(ng, false);
          produced[j][i] = true;
        }
      }
    }
  }

  Matrix bmat(f, dm, dm);  // columns are the b_j
  for (std::size_t j = 0; j < dm; ++j)
    for (std::size_t r = 0; r < dm; ++r) bmat(r, j) = basis[j][r];
  const Matrix binv = *inverse(bmat);
  std::vector<Matrix> tilde;  // coordinates of A_i b_j in the b basis
  for (std::size_t i = 0; i < ng; ++i) tilde.push_back(binv * m.gen(i) * bmat);

  // The image of b_j is N(w) applied to the image of its seed, so it only
  // involves that seed's block of unknowns: phi[j] is a dn x dn block.
  const std::size_t unknowns = dn * seeds;
  std::vector<std::size_t> seed_of(dm);
  std::vector<Matrix> phi;
  phi.reserve(dm);
  for (std::size_t j = 0; j < dm; ++j) {
    if (origin[j].seed >= 0) {
      seed_of[j] = static_cast<std::size_t>(origin[j].seed);
      phi.push_back(Matrix::identity(f, dn));
    } else {
      seed_of[j] = seed_of[origin[j].from];
      phi.push_back(n.gen(origin[j].gen) * phi[origin[j].from]);
    }
  }

  EchelonBasis constraints(f, unknowns);
  for (std::size_t j = 0; j < dm && !constraints.full(); ++j) {
    for (std::size_t i = 0; i < ng && !constraints.full(); ++i) {
      if (produced[j][i]) continue;
      Matrix c(f, dn, unknowns);
      c.set_block(0, seed_of[j] * dn, n.gen(i) * phi[j]);
      for (std::size_t l = 0; l < dm; ++l) {
        const Elem coef = tilde[i](l, j);
        if (coef == 0) continue;
        const Elem neg = f.neg(coef);
        const std::size_t c0 = seed_of[l] * dn;
        for (std::size_t r = 0; r < dn; ++r) f.axpy(c.row(r).subspan(c0, dn), neg, phi[l].row(r));
      }
      for (std::size_t r = 0; r < dn; ++r) {
        if (!all_zero(c.row(r))) constraints.insert(c.row(r));
      }
    }
  }
  const Matrix sol = kernel_basis(constraints.matrix());
  if (sol.rows() == 0) return {};

  // images of every b_j under every solution at once, then back to the standard basis
  const std::size_t ns = sol.rows();
  const Matrix solt = sol.transpose();
  std::vector<Matrix> spun(ns, Matrix(f, dn, dm));
  for (std::size_t j = 0; j < dm; ++j) {
    const Matrix y = phi[j] * solt.block(seed_of[j] * dn, 0, dn, ns);  // dn x ns
    for (std::size_t s = 0; s < ns; ++s)
      for (std::size_t r = 0; r < dn; ++r) spun[s](r, j) = y(r, s);
  }
  std::vector<Matrix> out;
  out.reserve(ns);
  for (auto& sp : spun) out.push_back(sp * binv);
  return out;
}

std::size_t hom_dim(const Module& m, const Module& n) { return hom_space(m, n).size(); }

Module dual(const Module& m) {
  std::vector<Matrix> gens;
  for (const auto& a : m.gens()) gens.push_back(inverse(a)->transpose());
  return Module(m.group_ptr(), m.field(), m.dim(), std::move(gens), false);
}

ModuleMap dual_map(const ModuleMap& f, const Module& dual_source, const Module& dual_target) {
  require(dual_source.dim() == f.target.dim() && dual_target.dim() == f.source.dim(), "dual map shape mismatch");
  return {dual_source, dual_target, f.mat.transpose()};
}

Module tensor(const Module& m, const Module& n) {
  require(m.same_context(n), "modules over different groups or fields");
  std::vector<Matrix> gens;
  for (std::size_t s = 0; s < m.gens().size(); ++s) gens.push_back(Matrix::kron(m.gen(s), n.gen(s)));
  return Module(m.group_ptr(), m.field(), m.dim() * n.dim(), std::move(gens), false);
}

Module direct_sum(const std::vector<Module>& parts) {
  require(!parts.empty(), "direct sum of no modules needs a context");
  std::size_t dim = 0;
  for (const auto& p : parts) {
    require(p.same_context(parts[0]), "modules over different groups or fields");
    dim += p.dim();
  }
  const Field& f = parts[0].field();
  std::vector<Matrix> gens;
  for (std::size_t s = 0; s < parts[0].gens().size(); ++s) {
    Matrix a(f, dim, dim);
    std::size_t off = 0;
    for (const auto& p : parts) {
      a.set_block(off, off, p.gen(s));
      off += p.dim();
    }
    gens.push_back(std::move(a));
  }
  return Module(parts[0].group_ptr(), f, dim, std::move(gens), false);
}

Module direct_sum(const Module& a, const Module& b) { return direct_sum(std::vector<Module>{a, b}); }

Module change_basis(const Module& m, const Matrix& p) {
  auto pinv = inverse(p);
  require(pinv.has_value(), "basis change matrix is singular");
  std::vector<Matrix> gens;
  for (const auto& a : m.gens()) gens.push_back(*pinv * a * p);
  return Module(m.group_ptr(), m.field(), m.dim(), std::move(gens), false);
}

Module restrict(const Module& m, const EmbeddedSubgroup& h) {
  std::vector<Matrix> gens;
  for (auto s : h.group->generators()) gens.push_back(m.action(h.to_parent[s]));
  return Module(h.group, m.field(), m.dim(), std::move(gens), false);
}

Module induce(const Module& m, const EmbeddedSubgroup& h, const GroupPtr& g) {
  require(m.group_ptr() == h.group, "module is not over the given subgroup");
  const std::size_t n = g->order(), hn = h.group->order(), d = m.dim();
  std::vector<long> local(n, -1);  // parent element -> subgroup element
  for (std::size_t i = 0; i < hn; ++i) local[h.to_parent[i]] = static_cast<long>(i);
  std::vector<std::size_t> reps;
  std::vector<long> coset(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    if (coset[x] >= 0) continue;
    for (std::size_t i = 0; i < hn; ++i) coset[g->mul(x, h.to_parent[i])] = static_cast<long>(reps.size());
    reps.push_back(x);
  }
  const std::size_t k = reps.size();
  std::vector<Matrix> gens;
  for (auto s : g->generators()) {
    Matrix a(m.field(), k * d, k * d);
    for (std::size_t i = 0; i < k; ++i) {
      // s t_i = t_j h
      const std::size_t y = g->mul(s, reps[i]);
      const std::size_t j = static_cast<std::size_t>(coset[y]);
      const long hl = local[g->mul(g->inv(reps[j]), y)];
      ensure(hl >= 0, "coset arithmetic left the subgroup");
      a.set_block(j * d, i * d, m.action(static_cast<std::size_t>(hl)));
    }
    gens.push_back(std::move(a));
  }
  return Module(g, m.field(), k * d, std::move(gens), false);
}

Module extend_scalars(const Module& m, const Field& big) {
  FieldEmbedding emb(m.field(), big);
  std::vector<Matrix> gens;
  for (const auto& a : m.gens()) {
    Vector e(a.data().size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = emb(a.data()[i]);
    gens.emplace_back(big, a.rows(), a.cols(), std::move(e));
  }
  return Module(m.group_ptr(), big, m.dim(), std::move(gens), false);
}

Matrix spin(const Module& m, const Matrix& vectors) {
  require(vectors.cols() == m.dim() || vectors.rows() == 0, "vectors do not live in the module");
  EchelonBasis e(m.field(), m.dim());
  std::deque<Vector> queue;
  for (std::size_t r = 0; r < vectors.rows(); ++r) {
    Vector v(vectors.row(r).begin(), vectors.row(r).end());
    if (e.insert(v)) queue.push_back(std::move(v));
  }
  while (!queue.empty() && !e.full()) {
    Vector v = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : m.gens()) {
      Vector w = a.apply(v);
      if (e.insert(w)) queue.push_back(std::move(w));
    }
  }
  return e.rref_matrix();
}

bool is_submodule(const Module& m, const Matrix& rows) {
  if (rows.rows() == 0) return true;
  EchelonBasis e(m.field(), m.dim());
  for (std::size_t r = 0; r < rows.rows(); ++r) e.insert(rows.row(r));
  for (std::size_t r = 0; r < rows.rows(); ++r)
    for (const auto& a : m.gens())
      if (!e.contains(a.apply(rows.row(r)))) return false;
  return true;
}

SubQuotient sub_quotient(const Module& m, const Matrix& u, const Matrix& w) {
  const Field& f = m.field();
  const std::size_t d = m.dim();
  require((u.rows() == 0 || u.cols() == d) && (w.rows() == 0 || w.cols() == d), "subspace ambient mismatch");
  require(is_submodule(m, u) && is_submodule(m, w), "subspace is not G-stable");
  EchelonBasis ew(f, d);
  for (std::size_t r = 0; r < w.rows(); ++r) ew.insert(w.row(r));
  EchelonBasis eu(f, d);
  for (std::size_t r = 0; r < u.rows(); ++r) {
    Vector v(u.row(r).begin(), u.row(r).end());
    ew.reduce(v);
    eu.insert(v);
  }
  EchelonBasis full_u(f, d);
  for (std::size_t r = 0; r < u.rows(); ++r) full_u.insert(u.row(r));
  for (std::size_t r = 0; r < w.rows(); ++r) require(full_u.contains(w.row(r)), "W is not contained in U");
  const Matrix reps = eu.rref_matrix();
  const std::size_t k = reps.rows();
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t c = 0;
    while (reps(i, c) == 0) ++c;
    piv[i] = c;
  }
  Matrix proj(f, k, d);
  for (std::size_t c = 0; c < d; ++c) {
    Vector e(d, 0);
    e[c] = 1;
    ew.reduce(e);
    for (std::size_t i = 0; i < k; ++i) proj(i, c) = e[piv[i]];
  }
  Matrix lift = reps.transpose();
  std::vector<Matrix> gens;
  for (const auto& a : m.gens()) gens.push_back(proj * a * lift);
  return {Module(m.group_ptr(), f, k, std::move(gens), false), std::move(lift), std::move(proj)};
}

SubQuotient submodule(const Module& m, const Matrix& u) {
  return sub_quotient(m, u, Matrix(m.field(), 0, m.dim()));
}

SubQuotient quotient(const Module& m, const Matrix& w) {
  return sub_quotient(m, Matrix::identity(m.field(), m.dim()), w);
}

SubQuotient kernel_module(const ModuleMap& f) { return submodule(f.source, row_space(kernel_basis(f.mat))); }

SubQuotient image_module(const ModuleMap& f) { return submodule(f.target, column_space(f.mat)); }

}  // namespace stmod
