#include "doctest.h"
#include "stmod/blocks.hpp"
#include "stmod/error.hpp"
#include "stmod/meataxe.hpp"
#include "stmod/presets.hpp"
#include "stmod/rng.hpp"
#include "stmod/stable.hpp"

using namespace stmod;

namespace {

// Oracle (Higman): a map factors through a projective iff it is a relative
// trace sum_g g X g^{-1} of a linear map X, so PHom is the image of the trace.
std::size_t phom_dim_by_trace(const Module& m, const Module& n) {
  const Field& f = m.field();
  const Group& g = m.group();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      Matrix x(f, n.dim(), m.dim());
      x(i, j) = 1;
      Matrix t(f, n.dim(), m.dim());
      for (std::size_t e = 0; e < g.order(); ++e) t.add_scaled(n.action(e) * x * m.action(g.inv(e)), 1);
      rows.push_back(t.flatten());
    }
  if (rows.empty()) return 0;
  return rank(Matrix::from_rows(f, m.dim() * n.dim(), rows));
}

std::size_t stable_dim_by_trace(const Module& m, const Module& n) { return hom_dim(m, n) - phom_dim_by_trace(m, n); }

Module random_module(const GroupAlgebra& a, Rng& rng) {
  const Field& f = a.field();
  const Module& r = a.regular();
  auto random_vec = [&] {
    Vector v(r.dim());
    for (auto& e : v) e = static_cast<Elem>(rng.uniform(f.q()));
    return v;
  };
  switch (rng.uniform(4)) {
    case 0:
      return submodule(r, spin(r, Matrix(f, 1, r.dim(), random_vec()))).module;
    case 1:
      return quotient(r, spin(r, Matrix(f, 1, r.dim(), random_vec()))).module;
    case 2: {
      const auto& s = a.simples()[rng.uniform(a.simples().size())];
      const auto& p = a.pims()[rng.uniform(a.pims().size())];
      return direct_sum(s, quotient(p, a.socle(p)).module);
    }
    default: {
      const auto& p = a.pims()[rng.uniform(a.pims().size())];
      return submodule(p, a.radical(p)).module;
    }
  }
}

Module heart_of(const GroupAlgebra& a) {
  const auto& p = a.pims()[0];
  return sub_quotient(p, a.radical(p), a.socle(p)).module;
}

}  // namespace

TEST_CASE("projective-free part") {
  auto a = GroupAlgebra::get(symmetric_group(3), Field::create(3));
  StableCategory st(a);
  CHECK(st.projective_free_part(a->regular()).module.dim() == 0);
  auto pk = direct_sum(a->pims()[0], a->trivial());
  auto pf = st.projective_free_part(pk);
  CHECK(pf.module.dim() == 1);
  CHECK(hom_dim(pf.module, a->trivial()) == 1);
  CHECK(is_equivariant(pf.module, pk, pf.lift));
  CHECK(is_equivariant(pk, pf.module, pf.proj));
  CHECK((pf.proj * pf.lift).is_identity());

  // non-minimal free cover kG^2 -> k over kC_2: its kernel is Omega k + kG
  auto c2 = GroupAlgebra::get(cyclic_group(2), Field::create(2));
  StableCategory sc(c2);
  auto free2 = direct_sum(c2->regular(), c2->regular());
  Matrix aug = Matrix::from_ints(c2->field(), 1, 4, {1, 1, 1, 1});
  auto ker = kernel_module(ModuleMap{free2, c2->trivial(), aug}).module;
  CHECK(ker.dim() == 3);
  auto stripped = sc.projective_free_part(ker).module;
  CHECK(stripped.dim() == 1);
  CHECK(is_isomorphic(stripped, sc.syzygy(c2->trivial(), 1)).isomorphic);
}

TEST_CASE("syzygies") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto a = GroupAlgebra::get(cyclic_group(p), Field::create(p));
    StableCategory st(a);
    CHECK(st.omega_k(1).dim() == p - 1);
    CHECK(st.syzygy(a->trivial(), 1).dim() == p - 1);
  }
  auto f3 = Field::create(3);
  auto g = symmetric_group(3);
  auto a = GroupAlgebra::get(g, f3);
  StableCategory st(a);
  auto sign = one_dim_module(g, f3, {2, 1});
  CHECK(st.omega_k(1).dim() == 2);
  CHECK(is_isomorphic(st.omega_k(2), sign).isomorphic);
  CHECK(is_isomorphic(st.omega_k(4), a->trivial()).isomorphic);
  CHECK(is_isomorphic(st.omega_k(-2), sign).isomorphic);
  CHECK(is_isomorphic(st.syzygy(a->trivial(), -1), st.omega_k(3)).isomorphic);
}

TEST_CASE("Omega and its inverse are quasi-inverse") {
  std::vector<std::pair<GroupPtr, Field>> cases{{symmetric_group(3), Field::create(3)},
                                                {cyclic_group(4), Field::create(2)},
                                                {alternating_group(4), Field::create(2, 2)},
                                                {dihedral_group(10), Field::create(5)},
                                                {quaternion_group(8), Field::create(2)}};
  Rng rng(21);
  for (auto& [g, f] : cases) {
    auto a = GroupAlgebra::get(g, f);
    StableCategory st(a);
    for (int t = 0; t < 20; ++t) {
      auto m = random_module(*a, rng);
      auto pf = st.projective_free_part(m).module;
      CHECK(is_isomorphic(st.syzygy(st.syzygy(m, 1), -1), pf).isomorphic);
      CHECK(is_isomorphic(st.syzygy(st.syzygy(m, -1), 1), pf).isomorphic);
      CHECK(!a->is_projective(pf) == (pf.dim() > 0));
    }
  }
}

TEST_CASE("maps factoring through projectives") {
  auto c2 = GroupAlgebra::get(cyclic_group(2), Field::create(2));
  StableCategory s2(c2);
  CHECK(s2.phom_subspace(c2->regular(), c2->regular()).rows() == 2);
  CHECK(s2.phom_subspace(c2->trivial(), c2->trivial()).rows() == 0);
  CHECK(s2.stable_hom(c2->trivial(), c2->trivial()).dim() == 1);

  auto f3 = Field::create(3);
  auto g = symmetric_group(3);
  auto a = GroupAlgebra::get(g, f3);
  StableCategory st(a);
  CHECK(st.phom_subspace(a->trivial(), a->trivial()).rows() == 0);
  CHECK(st.stable_hom(a->trivial(), one_dim_module(g, f3, {2, 1})).dim() == 0);
  CHECK(st.stable_hom(a->pims()[1], a->trivial()).dim() == 0);

  // against the trace oracle on random pairs
  std::vector<std::pair<GroupPtr, Field>> cases{{symmetric_group(3), f3},
                                                {cyclic_group(4), Field::create(2)},
                                                {dihedral_group(8), Field::create(2)},
                                                {alternating_group(4), Field::create(2)}};
  Rng rng(5);
  for (auto& [gg, f] : cases) {
    auto al = GroupAlgebra::get(gg, f);
    StableCategory sc(al);
    for (int t = 0; t < 8; ++t) {
      auto m = random_module(*al, rng);
      auto n = random_module(*al, rng);
      CHECK(sc.phom_subspace(m, n).rows() == phom_dim_by_trace(m, n));
    }
  }
}

TEST_CASE("Tate cohomology") {
  auto c2 = GroupAlgebra::get(cyclic_group(2), Field::create(2));
  StableCategory s2(c2);
  for (int i = -4; i <= 4; ++i) {
    CHECK(s2.tate(c2->trivial(), i).dim() == 1);
    CHECK(s2.tate(c2->regular(), i).dim() == 0);
  }
  auto a = GroupAlgebra::get(symmetric_group(3), Field::create(3));
  StableCategory st(a);
  const std::vector<std::size_t> expect{1, 0, 0, 1};
  for (int i = 0; i < 4; ++i) {
    CHECK(st.tate(a->trivial(), i).dim() == expect[static_cast<std::size_t>(i)]);
    CHECK(stable_dim_by_trace(st.omega_k(i), a->trivial()) == expect[static_cast<std::size_t>(i)]);
  }
  // periodicity of the graded dimensions across two periods
  Rng rng(3);
  auto m = random_module(*a, rng);
  for (int i = -4; i < 4; ++i) CHECK(st.tate(m, i).dim() == st.tate(m, i + 4).dim());
}

TEST_CASE("periods") {
  auto s3 = GroupAlgebra::get(symmetric_group(3), Field::create(3));
  auto c = StableCategory(s3).period();
  REQUIRE(c);
  CHECK(c->d == 4);
  CHECK(c->dims == std::vector<std::size_t>{1, 2, 1, 2});
  auto c2 = StableCategory(GroupAlgebra::get(cyclic_group(2), Field::create(2))).period();
  REQUIRE(c2);
  CHECK(c2->d == 1);
  auto c3 = StableCategory(GroupAlgebra::get(cyclic_group(3), Field::create(3))).period();
  REQUIRE(c3);
  CHECK(c3->d == 2);
  // V_4 is not periodic
  CHECK_FALSE(StableCategory(GroupAlgebra::get(dihedral_group(4), Field::create(2))).period(12));
}

TEST_CASE("stable triviality and ghosts") {
  auto c2 = GroupAlgebra::get(cyclic_group(2), Field::create(2));
  StableCategory s2(c2);
  const auto& k2 = c2->trivial();
  CHECK(s2.is_stably_trivial(zero_map(k2, k2)));
  CHECK_FALSE(s2.is_stably_trivial(identity_map(k2)));

  auto a = GroupAlgebra::get(symmetric_group(3), Field::create(3));
  StableCategory st(a);
  // anything out of a projective is stably trivial
  CHECK(st.is_stably_trivial(ModuleMap{a->pims()[0], a->trivial(), a->pim_tops()[0]}));
  CHECK_FALSE(st.is_stably_trivial(identity_map(st.omega_k(1))));
  auto cert = *st.period();
  auto z = st.is_ghost(zero_map(a->trivial(), a->trivial()), cert);
  CHECK(z.ghost);
  CHECK(z.quality == GhostQuality::Full);
  auto id = st.is_ghost(identity_map(a->trivial()), cert);
  CHECK_FALSE(id.ghost);
  REQUIRE(id.failing_degree);
  CHECK(*id.failing_degree == 0);
  CHECK(id.stably_nonzero);

  // stably trivial maps are ghosts
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    auto m = random_module(*a, rng);
    auto n = random_module(*a, rng);
    auto ph = st.phom_subspace(m, n);
    Matrix f(a->field(), n.dim(), m.dim());
    for (std::size_t r = 0; r < ph.rows(); ++r) {
      Matrix b(a->field(), n.dim(), m.dim(), Vector(ph.row(r).begin(), ph.row(r).end()));
      f.add_scaled(b, static_cast<Elem>(rng.uniform(3)));
    }
    ModuleMap map{m, n, f};
    CHECK(st.is_stably_trivial(map));
    CHECK(st.is_ghost(map, cert).ghost);
  }
}

TEST_CASE("universal ghosts") {
  auto c4 = GroupAlgebra::get(cyclic_group(4), Field::create(2));
  StableCategory s4(c4);
  auto cert = *s4.period();
  CHECK(cert.d == 2);
  auto h = heart_of(*c4);
  CHECK(h.dim() == 2);
  auto u = s4.universal_ghost(h, cert);
  CHECK(u.cert.ghost);
  CHECK(u.cert.quality == GhostQuality::Full);
  CHECK(u.cert.stably_nonzero);
  CHECK_FALSE(u.stably_trivial);
  CHECK_FALSE(u.split_epi);

  auto a = GroupAlgebra::get(symmetric_group(3), Field::create(3));
  StableCategory st(a);
  auto c = *st.period();
  for (int j = 0; j < 4; ++j) {
    auto uj = st.universal_ghost(st.omega_k(j), c);
    CHECK(uj.stably_trivial);
    CHECK(uj.split_epi);
  }

  auto c9 = GroupAlgebra::get(cyclic_group(9), Field::create(3));
  StableCategory s9(c9);
  auto h9 = heart_of(*c9);
  CHECK(h9.dim() == 7);
  auto u9 = s9.universal_ghost(h9, *s9.period());
  CHECK(u9.cert.ghost);
  CHECK_FALSE(u9.stably_trivial);
}

TEST_CASE("cofibers") {
  auto a = GroupAlgebra::get(symmetric_group(3), Field::create(3));
  StableCategory st(a);
  Rng rng(17);
  for (int t = 0; t < 5; ++t) {
    auto m = random_module(*a, rng);
    auto tri = st.cofiber(identity_map(m));
    CHECK(a->is_projective(tri.h.target));
    auto x = random_module(*a, rng);
    auto t0 = st.cofiber(zero_map(x, m));
    CHECK(st.stable_iso(t0.h.target, direct_sum(m, st.syzygy(x, -1))));
    // the composite X -> M -> C is stably trivial
    auto g = hom_space(x, m);
    if (!g.empty()) {
      auto tg = st.cofiber(ModuleMap{x, m, g[0]});
      CHECK(st.is_stably_trivial(ModuleMap{x, tg.h.target, tg.h.mat * g[0]}));
      CHECK(is_equivariant(tg.delta.source, tg.delta.target, tg.delta.mat));
    }
  }
  // cofiber of soc P -> rad P is the middle of the almost split sequence, H + P
  auto c9 = GroupAlgebra::get(cyclic_group(9), Field::create(3));
  StableCategory s9(c9);
  const auto& p = c9->pims()[0];
  auto rad = submodule(p, c9->radical(p));
  auto soc_in_rad = submodule(rad.module, rad.proj.rows() ? row_space((rad.proj * c9->socle(p).transpose()).transpose())
                                                          : Matrix());
  auto tri = s9.cofiber(ModuleMap{soc_in_rad.module, rad.module, soc_in_rad.lift});
  auto mid = tri.h.target;
  auto expect = direct_sum(heart_of(*c9), p);
  CHECK(mid.dim() == expect.dim());
  CHECK(is_isomorphic(mid, expect).isomorphic);
}

TEST_CASE("stable isomorphism") {
  auto a = GroupAlgebra::get(symmetric_group(3), Field::create(3));
  StableCategory st(a);
  Rng rng(2);
  auto m = random_module(*a, rng);
  CHECK(st.stable_iso(m, direct_sum(m, a->regular())));
  CHECK(st.stable_iso(st.omega_k(4), a->trivial()));
  auto c4 = GroupAlgebra::get(cyclic_group(4), Field::create(2));
  StableCategory s4(c4);
  auto h = heart_of(*c4);
  CHECK_FALSE(s4.stable_iso(h, s4.omega_k(0)));
  CHECK_FALSE(s4.stable_iso(h, s4.omega_k(1)));
}

TEST_CASE("Omega preserves stable hom dimensions") {
  std::vector<std::pair<GroupPtr, Field>> cases{{symmetric_group(3), Field::create(3)},
                                                {cyclic_group(4), Field::create(2)},
                                                {dihedral_group(8), Field::create(2)}};
  Rng rng(31);
  for (auto& [g, f] : cases) {
    auto a = GroupAlgebra::get(g, f);
    StableCategory st(a);
    for (int t = 0; t < 6; ++t) {
      auto m = random_module(*a, rng);
      auto n = random_module(*a, rng);
      const std::size_t d = st.stable_hom(m, n).dim();
      CHECK(st.stable_hom(st.syzygy(m, 1), st.syzygy(n, 1)).dim() == d);
      CHECK(stable_dim_by_trace(m, n) == d);
    }
  }
}

TEST_CASE("Ext-linkage through stable homs matches the blocks") {
  for (auto& [g, p] : std::vector<std::pair<GroupPtr, std::uint32_t>>{
           {symmetric_group(4), 3}, {cyclic_group(6), 3}, {dihedral_group(10), 5}, {sl23_group(), 3}}) {
    auto f = Field::create(p, splitting_degree(p, g->exponent()));
    auto a = GroupAlgebra::get(g, f);
    StableCategory st(a);
    auto blocks = central_primitive_idempotents(*a);
    std::vector<std::size_t> block_of(a->simples().size());
    for (std::size_t b = 0; b < blocks.blocks.size(); ++b)
      for (auto s : blocks.blocks[b].simples) block_of[s] = b;
    for (std::size_t s = 0; s < a->simples().size(); ++s)
      for (std::size_t t = 0; t < a->simples().size(); ++t) {
        const std::size_t ext = st.stable_hom(st.syzygy(a->simples()[s], 1), a->simples()[t]).dim();
        if (ext > 0) CHECK(block_of[s] == block_of[t]);
      }
  }
}
