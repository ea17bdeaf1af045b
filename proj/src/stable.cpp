#include "stmod/stable.hpp"

#include <algorithm>

#include "stmod/error.hpp"
#include "stmod/meataxe.hpp"

namespace stmod {

namespace {

Matrix flat_rows(const Field& f, std::size_t width, const std::vector<Matrix>& maps) {
  std::vector<Vector> rows;
  rows.reserve(maps.size());
  for (const auto& m : maps) rows.push_back(m.flatten());
  return Matrix::from_rows(f, width, rows);
}

Matrix phom_through(const Module& m, const GroupAlgebra::Cover& cover) {
  const Field& f = m.field();
  const std::size_t width = cover.pi.rows() * m.dim();
  if (m.dim() == 0 || cover.module.dim() == 0) return Matrix(f, 0, width);
  std::vector<Matrix> images;
  for (const auto& h : hom_space(m, cover.module)) images.push_back(cover.pi * h);
  return row_space(flat_rows(f, width, images));
}

bool in_row_space(const Matrix& rows, const Vector& v) {
  EchelonBasis e(rows.field(), v.size());
  for (std::size_t r = 0; r < rows.rows(); ++r) e.insert(rows.row(r));
  return e.contains(v);
}

}  // namespace

StableCategory::StableCategory(AlgebraPtr a) : a_(std::move(a)) {
  require(a_->sylow_order() > 1, "the characteristic must divide the group order");
}

SubQuotient StableCategory::projective_free_part(const Module& m) const {
  const GroupAlgebra& a = *a_;
  const Field& f = m.field();
  if (m.dim() == 0 || a.is_projective(m))
    return {zero_module(m.group_ptr(), f), Matrix(f, m.dim(), 0), Matrix(f, 0, m.dim())};
  // A PIM P is injective with simple socle S, so maps h_1..h_t: P -> M whose
  // images of S are independent embed P^t as a summand; the images of S under
  // all of Hom(P, M) span the S-part of the socle of the projective part.
  // A retraction is solved for from its values on the socles, which already
  // make R H invertible modulo the radical of End(Q).
  Matrix hcat(f, m.dim(), 0);
  Matrix rstack(f, 0, m.dim());
  for (const auto& p : a.pims()) {
    if (p.dim() > m.dim()) continue;
    const Matrix soc = a.socle(p);
    const std::size_t ds = soc.rows();
    EchelonBasis seen(f, m.dim());
    std::vector<Matrix> chosen;
    for (auto& h : hom_space(p, m)) {
      const Matrix img = (h * soc.transpose()).transpose();
      const std::size_t before = seen.rank();
      for (std::size_t c = 0; c < ds; ++c) seen.insert(img.row(c));
      if (seen.rank() == before) continue;
      ensure(seen.rank() == before + ds, "socle image meets the span partially");
      chosen.push_back(std::move(h));
    }
    if (chosen.empty()) continue;

    EchelonBasis socb(f, p.dim());
    for (std::size_t c = 0; c < ds; ++c) socb.insert(soc.row(c));
    const Vector s(soc.row(0).begin(), soc.row(0).end());
    std::vector<Vector> vs;
    for (const auto& h : chosen) vs.push_back(h.apply(s));
    const auto gs = hom_space(m, p);
    const std::size_t t = chosen.size();
    std::vector<Vector> rows;
    for (const auto& g : gs) {
      Vector row;
      for (const auto& v : vs) {
        const auto c = socb.coordinates(g.apply(v));
        ensure(c.has_value(), "map between PIMs leaves the socle");
        row.insert(row.end(), c->begin(), c->end());
      }
      rows.push_back(std::move(row));
    }
    const Matrix sys = Matrix::from_rows(f, t * ds, rows);
    for (std::size_t j = 0; j < t; ++j) {
      Vector target(t * ds, 0);
      target[j * ds] = 1;  // s has coordinates e_0
      const auto x = solve_left(sys, target);
      ensure(x.has_value(), "split injection from a PIM has no retraction");
      Matrix r(f, p.dim(), m.dim());
      for (std::size_t k = 0; k < gs.size(); ++k)
        if ((*x)[k] != 0) r.add_scaled(gs[k], (*x)[k]);
      rstack = Matrix::vstack(rstack, r);
      hcat = Matrix::hstack(hcat, chosen[j]);
    }
  }
  if (hcat.cols() == 0) return {m, Matrix::identity(f, m.dim()), Matrix::identity(f, m.dim())};
  const auto rh_inv = inverse(rstack * hcat);
  ensure(rh_inv.has_value(), "retraction onto the projective part is not invertible");
  const Matrix along = Matrix::identity(f, m.dim()) - hcat * *rh_inv * rstack;
  auto sub = submodule(m, row_space(kernel_basis(rstack)));
  ensure(sub.module.dim() + hcat.cols() == m.dim(), "projective part and complement do not fill M");
  return {sub.module, sub.lift, sub.proj * along};
}

Module StableCategory::syzygy(const Module& m, int n) const {
  if (n == 0) return projective_free_part(m).module;
  if (n < 0) return dual(syzygy(dual(m), -n));
  Module cur = m;
  for (int i = 0; i < n; ++i) {
    if (cur.dim() == 0) break;
    auto cover = a_->projective_cover(cur);
    cur = kernel_module(ModuleMap{cover.module, cur, cover.pi}).module;
  }
  return cur;
}

const Module& StableCategory::omega_k(int i) const {
  std::lock_guard lock(mutex_);
  if (auto it = omega_.find(i); it != omega_.end()) return it->second;
  if (omega_.empty()) omega_.emplace(0, a_->trivial());
  if (i < 0) {
    // k is self-dual, so Omega^{-i} k = (Omega^i k)^*
    int j = 0;
    while (j < -i) {
      if (!omega_.count(j + 1)) {
        const Module& prev = omega_.at(j);
        Module next = prev.dim() == 0 ? prev : syzygy(prev, 1);
        omega_.emplace(j + 1, std::move(next));
      }
      ++j;
    }
    return omega_.emplace(i, dual(omega_.at(-i))).first->second;
  }
  int j = 0;
  while (j < i) {
    if (!omega_.count(j + 1)) omega_.emplace(j + 1, syzygy(omega_.at(j), 1));
    ++j;
  }
  return omega_.at(i);
}

Matrix StableCategory::phom_subspace(const Module& m, const Module& n) const {
  const Field& f = m.field();
  const std::size_t width = n.dim() * m.dim();
  if (width == 0) return Matrix(f, 0, width);
  if (m.dim() >= n.dim()) return phom_through(m, a_->projective_cover(n));
  // Dually, a map factors through a projective iff it extends along M -> I(M);
  // the spin system for Hom(I(M), N) is the smaller one when N is large.
  const auto [hull, iota] = injective_hull(m);
  std::vector<Matrix> images;
  for (const auto& g : hom_space(hull, n)) images.push_back(g * iota);
  return row_space(flat_rows(f, width, images));
}

StableHom StableCategory::stable_hom(const Module& m, const Module& n) const {
  StableHom s;
  s.hom = hom_space(m, n);
  s.phom = phom_subspace(m, n);
  const std::size_t width = m.dim() * n.dim();
  EchelonBasis e(m.field(), width);
  for (std::size_t r = 0; r < s.phom.rows(); ++r) e.insert(s.phom.row(r));
  for (const auto& h : s.hom)
    if (e.insert(h.flatten())) s.reps.push_back(h);
  return s;
}

StableHom StableCategory::tate(const Module& m, int i) const { return stable_hom(omega_k(i), m); }

std::optional<PeriodCertificate> StableCategory::period(int max_d) const {
  const std::size_t pn = a_->sylow_order();
  if (max_d <= 0) max_d = static_cast<int>(4 * pn);
  PeriodCertificate cert;
  cert.pn = pn;
  const Module& k = a_->trivial();
  cert.dims.push_back(1);
  for (int i = 1; i <= max_d; ++i) {
    const Module& om = omega_k(i);
    const std::size_t d = om.dim();
    ensure(d > 0, "Omega^i k vanished although k is not projective");
    ensure(d % pn == 1 || d % pn == pn - 1, "dim Omega^i k is not +-1 mod |P|");
    if (d == 1) {
      auto iso = is_isomorphic(om, k, a_->seed());
      if (iso.isomorphic) {
        cert.d = i;
        cert.witness = *iso.witness;
        return cert;
      }
    }
    cert.dims.push_back(d);
  }
  return std::nullopt;
}

bool StableCategory::is_stably_trivial(const ModuleMap& f) const {
  if (f.source.dim() == 0 || f.target.dim() == 0 || f.mat.is_zero()) return true;
  return in_row_space(phom_subspace(f.source, f.target), f.mat.flatten());
}

GhostCertificate StableCategory::is_ghost(const ModuleMap& f, int lo, int hi, GhostQuality q) const {
  require(lo <= hi, "empty degree range");
  GhostCertificate c;
  c.quality = q;
  c.lo = lo;
  c.hi = hi;
  c.ghost = true;
  for (int i = lo; i <= hi; ++i) {
    const Module& om = omega_k(i);
    const StableHom sh = stable_hom(om, f.source);
    bool vanish = true;
    if (sh.dim() > 0 && f.target.dim() > 0) {
      const Matrix ph = phom_subspace(om, f.target);
      EchelonBasis e(f.source.field(), om.dim() * f.target.dim());
      for (std::size_t r = 0; r < ph.rows(); ++r) e.insert(ph.row(r));
      for (const auto& h : sh.reps)
        if (!e.contains((f.mat * h).flatten())) {
          vanish = false;
          break;
        }
    }
    c.degrees.push_back({i, sh.dim(), vanish});
    if (!vanish && c.ghost) {
      c.ghost = false;
      c.failing_degree = i;
    }
  }
  c.rank_gap = rank_gap(f);
  c.stably_nonzero = c.rank_gap > 0;
  return c;
}

std::size_t StableCategory::rank_gap(const ModuleMap& f) const {
  if (f.source.dim() == 0 || f.target.dim() == 0) return 0;
  const Matrix ph = phom_subspace(f.source, f.target);
  const std::size_t r0 = ph.rows();
  return rank(Matrix::vstack(ph, Matrix(f.source.field(), 1, ph.cols(), f.mat.flatten()))) - r0;
}

GhostCertificate StableCategory::is_ghost(const ModuleMap& f, const PeriodCertificate& cert) const {
  return is_ghost(f, 0, cert.d - 1, GhostQuality::Full);
}

std::pair<Module, Matrix> StableCategory::injective_hull(const Module& x) const {
  auto cover = a_->projective_cover(dual(x));
  Module hull = dual(cover.module);
  Matrix iota = cover.pi.transpose();
  ensure(is_equivariant(x, hull, iota) && rank(iota) == x.dim(), "injective hull map is not an embedding");
  return {std::move(hull), std::move(iota)};
}

Triangle StableCategory::cofiber(const ModuleMap& g) const {
  const Module& x = g.source;
  const Module& m = g.target;
  const Field& f = m.field();
  require(is_equivariant(x, m, g.mat), "cofiber of a non-equivariant map");
  if (x.dim() == 0) {
    auto zero = zero_module(m.group_ptr(), f);
    return {g, ModuleMap{m, m, Matrix::identity(f, m.dim())}, ModuleMap{m, zero, Matrix(f, 0, m.dim())},
            ModuleMap{x, zero, Matrix(f, 0, 0)}, ModuleMap{zero, m, Matrix(f, m.dim(), 0)}};
  }
  auto [hull, iota] = injective_hull(x);
  const Module s = direct_sum(m, hull);
  // U = {(g x, -iota x)}
  Matrix stacked = Matrix::vstack(g.mat, iota.scaled(f.neg(1)));
  const SubQuotient c = quotient(s, row_space(stacked.transpose()));
  Matrix incl_m(f, s.dim(), m.dim());
  incl_m.set_block(0, 0, Matrix::identity(f, m.dim()));
  Matrix h = c.proj * incl_m;
  const SubQuotient q = quotient(hull, row_space(iota.transpose()));
  Matrix pr_hull(f, hull.dim(), s.dim());
  pr_hull.set_block(0, m.dim(), Matrix::identity(f, hull.dim()));
  Matrix delta = q.proj * pr_hull * c.lift;
  Matrix incl_hull(f, s.dim(), hull.dim());
  incl_hull.set_block(m.dim(), 0, Matrix::identity(f, hull.dim()));
  Matrix through = c.proj * incl_hull;
  Triangle t{g, ModuleMap{m, c.module, std::move(h)}, ModuleMap{c.module, q.module, std::move(delta)},
             ModuleMap{x, hull, std::move(iota)}, ModuleMap{hull, c.module, std::move(through)}};
  ensure(is_equivariant(t.h.source, t.h.target, t.h.mat) && is_equivariant(t.delta.source, t.delta.target, t.delta.mat),
         "cofiber maps are not equivariant");
  ensure(c.module.dim() + x.dim() == m.dim() + hull.dim(), "cofiber dimension count");
  return t;
}

UniversalGhost StableCategory::universal_ghost(const Module& m, int lo, int hi, GhostQuality q) const {
  const Field& f = m.field();
  UniversalGhost u;
  std::vector<Module> parts;
  Matrix gmat(f, m.dim(), 0);
  for (int i = lo; i <= hi; ++i) {
    const StableHom sh = tate(m, i);
    for (const auto& h : sh.reps) {
      parts.push_back(omega_k(i));
      u.degree_of_block.push_back(i);
      gmat = Matrix::hstack(gmat, h);
    }
  }
  u.x = parts.empty() ? zero_module(m.group_ptr(), f) : direct_sum(parts);
  u.triangle = cofiber(ModuleMap{u.x, m, std::move(gmat)});
  const Triangle& t = u.triangle;
  ensure(t.h.mat * t.g.mat == t.hull_map.mat * t.iota.mat, "h g does not factor through the injective hull");
  ensure(is_equivariant(t.hull_map.source, t.hull_map.target, t.hull_map.mat), "hull map is not equivariant");
  ensure(a_->is_projective(t.iota.target), "injective hull is not projective");
  u.cert.quality = q;
  u.cert.lo = lo;
  u.cert.hi = hi;
  u.cert.ghost = true;
  for (int i = lo; i <= hi; ++i) {
    const auto n = static_cast<std::size_t>(std::count(u.degree_of_block.begin(), u.degree_of_block.end(), i));
    u.cert.degrees.push_back({i, n, true});
  }
  u.cert.rank_gap = rank_gap(t.h);
  u.cert.stably_nonzero = u.cert.rank_gap > 0;
  u.stably_trivial = !u.cert.stably_nonzero;

  // second route: the cofiber map vanishes stably iff g is a split epimorphism in stmod
  if (m.dim() == 0) {
    u.split_epi = true;
  } else {
    const std::size_t width = m.dim() * m.dim();
    std::vector<Vector> rows;
    if (u.x.dim() > 0)
      for (const auto& s : hom_space(m, u.x)) rows.push_back((u.triangle.g.mat * s).flatten());
    const Matrix pm = phom_subspace(m, m);
    for (std::size_t r = 0; r < pm.rows(); ++r) rows.emplace_back(pm.row(r).begin(), pm.row(r).end());
    const Vector id = Matrix::identity(f, m.dim()).flatten();
    u.split_epi = !rows.empty() && solve_left(Matrix::from_rows(f, width, rows), id).has_value();
  }
  ensure(u.split_epi == u.stably_trivial, "stable triviality routes disagree on the universal ghost");
  return u;
}

UniversalGhost StableCategory::universal_ghost(const Module& m, const PeriodCertificate& cert) const {
  return universal_ghost(m, 0, cert.d - 1, GhostQuality::Full);
}

bool StableCategory::stable_iso(const Module& a, const Module& b) const {
  return is_isomorphic(projective_free_part(a).module, projective_free_part(b).module, a_->seed()).isomorphic;
}

}  // namespace stmod
