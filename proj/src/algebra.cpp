#include "stmod/algebra.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "stmod/error.hpp"
#include "stmod/rng.hpp"

namespace stmod {

namespace {

constexpr int kCoverTries = 200;

}  // namespace

GroupAlgebra::GroupAlgebra(GroupPtr g, Field f, std::uint64_t seed)
    : group_(std::move(g)),
      field_(std::move(f)),
      seed_(seed),
      regular_(regular_module(group_, field_)),
      trivial_(trivial_module(group_, field_)),
      sylow_norm_(group_->order(), 0),
      sylow_order_(1) {
  if (group_->order() % field_.p() == 0) {
    const Subgroup p = sylow(*group_, field_.p());
    for (auto x : p.members) sylow_norm_[x] = 1;
    sylow_order_ = p.order();
  } else {
    sylow_norm_[0] = 1;
  }
}

std::shared_ptr<GroupAlgebra> GroupAlgebra::get(const GroupPtr& g, const Field& f, std::uint64_t seed) {
  static std::mutex mutex;
  static std::map<std::tuple<const Group*, std::uint32_t, std::uint32_t, std::uint64_t>, std::weak_ptr<GroupAlgebra>> registry;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(g.get(), f.p(), f.spec().m, seed);
  auto it = registry.find(key);
  if (it != registry.end()) {
    if (auto sp = it->second.lock(); sp && sp->group_ == g) return sp;
  }
  auto sp = std::make_shared<GroupAlgebra>(g, f, seed);
  registry[key] = sp;
  return sp;
}

void GroupAlgebra::build() const {
  std::call_once(built_, [this] {
    const Decomposition dec = decompose(regular_, seed_);
    std::vector<Module> pim_reps;
    std::vector<std::size_t> pim_counts;
    for (const auto& [rep, mult] : dec.classes) {
      pim_reps.push_back(dec.summands[rep].module);
      pim_counts.push_back(mult);
    }

    // every simple is the top of some PIM, so the factors of the PIMs exhaust them
    Rng rng(seed_ ^ 0x73696d);
    std::vector<Module> found;
    for (const auto& p : pim_reps) {
      for (auto& s : composition_factor_modules(p, rng)) {
        bool known = false;
        for (const auto& t : found) {
          if (t.dim() == s.dim() && hom_dim(s, t) > 0) {
            known = true;
            break;
          }
        }
        if (!known) found.push_back(std::move(s));
      }
    }
    auto is_trivial = [&](const Module& s) { return s.dim() == 1 && hom_dim(s, trivial_) == 1; };
    std::stable_sort(found.begin(), found.end(), [&](const Module& a, const Module& b) {
      const bool ta = is_trivial(a), tb = is_trivial(b);
      if (ta != tb) return ta;
      return a.dim() < b.dim();
    });
    ensure(!found.empty() && is_trivial(found[0]), "trivial module missing from the simple catalog");
    // use the trivial module itself as catalog entry 0
    found[0] = trivial_;
    simples_ = std::move(found);
    for (const auto& s : simples_) end_dims_.push_back(hom_dim(s, s));

    const std::size_t ns = simples_.size();
    pims_.assign(ns, Module());
    pim_tops_.assign(ns, Matrix());
    pim_mult_.assign(ns, 0);
    std::vector<bool> seen(ns, false);
    for (std::size_t c = 0; c < pim_reps.size(); ++c) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < ns; ++i) {
        auto h = hom_space(pim_reps[c], simples_[i]);
        if (h.empty()) continue;
        ++hits;
        ensure(!seen[i], "two PIMs with the same top");
        seen[i] = true;
        pims_[i] = pim_reps[c];
        pim_tops_[i] = h[0];
        pim_mult_[i] = pim_counts[c];
      }
      ensure(hits == 1, "a PIM does not have a simple top");
    }
    ensure(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }), "a simple module has no PIM");

    // J(kG) = kernel of kG -> prod End(S_i)
    const std::size_t n = group_->order();
    std::vector<Vector> rows(n);
    for (std::size_t g = 0; g < n; ++g)
      for (const auto& s : simples_) {
        const auto& d = s.action(g).data();
        rows[g].insert(rows[g].end(), d.begin(), d.end());
      }
    const std::size_t width = rows[0].size();
    jacobson_ = row_space(kernel_basis(Matrix::from_rows(field_, width, rows).transpose()));

    Matrix generated(field_, 0, n);
    for (std::size_t r = 0; r < jacobson_.rows() && generated.rows() < jacobson_.rows(); ++r) {
      Vector v(jacobson_.row(r).begin(), jacobson_.row(r).end());
      EchelonBasis cur(field_, n);
      for (std::size_t i = 0; i < generated.rows(); ++i) cur.insert(generated.row(i));
      if (cur.contains(v)) continue;
      rad_gens_.push_back(v);
      generated = spin(regular_, Matrix::from_rows(field_, n, rad_gens_));
    }
    ensure(generated.rows() == jacobson_.rows(), "radical generators do not generate J");
  });
}

const std::vector<Module>& GroupAlgebra::simples() const {
  build();
  return simples_;
}
const std::vector<Module>& GroupAlgebra::pims() const {
  build();
  return pims_;
}
const std::vector<Matrix>& GroupAlgebra::pim_tops() const {
  build();
  return pim_tops_;
}
const std::vector<std::size_t>& GroupAlgebra::pim_multiplicities() const {
  build();
  return pim_mult_;
}
const std::vector<std::size_t>& GroupAlgebra::simple_end_dims() const {
  build();
  return end_dims_;
}
const Matrix& GroupAlgebra::jacobson_radical() const {
  build();
  return jacobson_;
}
const std::vector<Vector>& GroupAlgebra::radical_generators() const {
  build();
  return rad_gens_;
}

Matrix GroupAlgebra::element_action(const Vector& a, const Module& m) const {
  require(a.size() == group_->order(), "group algebra element has the wrong length");
  Matrix r(field_, m.dim(), m.dim());
  for (std::size_t g = 0; g < a.size(); ++g)
    if (a[g] != 0) r.add_scaled(m.action(g), a[g]);
  return r;
}

std::size_t GroupAlgebra::simple_index(const Module& s) const {
  const auto& cat = simples();
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (cat[i].dim() == s.dim() && hom_dim(s, cat[i]) > 0) return i;
  throw InvariantViolation("module is not isomorphic to a catalog simple");
}

std::vector<std::size_t> GroupAlgebra::composition_factors(const Module& m) const {
  // [M : S_i] = dim Hom(P_i, M) / dim End(S_i)
  const auto& p = pims();
  std::vector<std::size_t> counts(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) counts[i] = hom_dim(p[i], m) / end_dims_[i];
  return counts;
}

Matrix GroupAlgebra::radical(const Module& m) const {
  if (m.dim() == 0) return Matrix(field_, 0, 0);
  Matrix images(field_, 0, m.dim());
  for (const auto& j : radical_generators()) images = Matrix::vstack(images, column_space(element_action(j, m)));
  return spin(m, images);
}

Matrix GroupAlgebra::socle(const Module& m) const {
  if (m.dim() == 0) return Matrix(field_, 0, 0);
  Matrix stacked(field_, 0, m.dim());
  for (const auto& j : radical_generators()) stacked = Matrix::vstack(stacked, element_action(j, m));
  return row_space(kernel_basis(stacked));
}

bool GroupAlgebra::is_projective(const Module& m) const {
  if (m.dim() % sylow_order_ != 0) return false;
  return rank(element_action(sylow_norm_, m)) * sylow_order_ == m.dim();
}

bool GroupAlgebra::is_projective_by_summands(const Module& m) const {
  if (m.dim() == 0) return true;
  const auto d = decompose(m, seed_);
  for (const auto& [rep, mult] : d.classes) {
    const Module& s = d.summands[rep].module;
    bool match = false;
    for (const auto& p : pims())
      if (p.dim() == s.dim() && is_isomorphic_indecomposable(s, p).isomorphic) match = true;
    if (!match) return false;
  }
  return true;
}

GroupAlgebra::Cover GroupAlgebra::projective_cover(const Module& m) const {
  require(m.same_context(regular_), "module does not belong to this group algebra");
  if (m.dim() == 0) return {zero_module(group_, field_), Matrix(field_, 0, 0), {}};
  const auto& cat = simples();
  const Matrix rad = radical(m);
  const SubQuotient top = quotient(m, rad);
  EchelonBasis image(field_, top.module.dim());
  Rng rng(seed_ ^ 0x636f76);
  std::vector<Module> parts;
  std::vector<std::size_t> which;
  Matrix pi(field_, m.dim(), 0);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const std::size_t mult = hom_dim(m, cat[i]) / end_dims_[i];
    if (mult == 0) continue;
    const auto hs = hom_space(pims_[i], m);
    for (std::size_t c = 0; c < mult; ++c) {
      bool ok = false;
      for (int t = 0; t < kCoverTries && !ok; ++t) {
        Matrix phi(field_, m.dim(), pims_[i].dim());
        for (const auto& h : hs) phi.add_scaled(h, static_cast<Elem>(rng.uniform(field_.q())));
        const Matrix cols = column_space(top.proj * phi);
        EchelonBasis trial = image;
        std::size_t grown = 0;
        for (std::size_t r = 0; r < cols.rows(); ++r) grown += trial.insert(cols.row(r)) ? 1 : 0;
        if (grown == cat[i].dim()) {
          image = std::move(trial);
          pi = Matrix::hstack(pi, phi);
          ok = true;
        }
      }
      ensure(ok, "could not lift the top of a module to its projective cover");
      parts.push_back(pims_[i]);
      which.push_back(i);
    }
  }
  ensure(image.full() && rank(pi) == m.dim(), "projective cover map is not surjective");
  return {direct_sum(parts), std::move(pi), std::move(which)};
}

}  // namespace stmod
