#include <algorithm>
#include <map>

#include "doctest.h"
#include "stmod/error.hpp"
#include "stmod/group.hpp"
#include "stmod/presets.hpp"
#include "stmod/rng.hpp"

using namespace stmod;

namespace {

std::vector<std::size_t> class_sizes(const Group& g) {
  std::vector<std::size_t> s;
  for (auto& c : conjugacy_classes(g).classes) s.push_back(c.size());
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<GroupPtr> all_presets() {
  return {cyclic_group(1),       cyclic_group(2),      cyclic_group(6),      cyclic_group(9),
          dihedral_group(4),     dihedral_group(6),    dihedral_group(10),   dihedral_group(12),
          quaternion_group(8),   quaternion_group(16), symmetric_group(3),   symmetric_group(4),
          symmetric_group(5),    alternating_group(4), alternating_group(5), sl23_group(),
          direct_product(*symmetric_group(3), *cyclic_group(2))};
}

}  // namespace

TEST_CASE("closure examples") {
  auto s3 = Group::close({parse_cycles("(1 2 3)"), parse_cycles("(1 2)")});
  CHECK(s3.order() == 6);
  CHECK(Group::close({parse_cycles("(1 2 3 4)")}).order() == 4);
  CHECK(quaternion_group(8)->order() == 8);
  CHECK(quaternion_group(8)->degree() == 8);
  CHECK_THROWS_AS(Group::close({parse_cycles("(1 2 3 4 5 6 7)"), parse_cycles("(1 2)")}), InvalidArgument);
}

TEST_CASE("preset orders") {
  CHECK(cyclic_group(15)->order() == 15);
  CHECK(dihedral_group(10)->order() == 10);
  CHECK(dihedral_group(4)->order() == 4);
  CHECK(quaternion_group(16)->order() == 16);
  CHECK(symmetric_group(5)->order() == 120);
  CHECK(alternating_group(4)->order() == 12);
  CHECK(alternating_group(5)->order() == 60);
  CHECK(sl23_group()->order() == 24);
  CHECK(parse_group_spec("product(symmetric(3), cyclic(2))")->order() == 12);
  CHECK(parse_group_spec("perm: (1 2 3)(4 5)")->degree() == 5);
  CHECK(parse_group_spec("perm: (1 2 3)(4 5)")->order() == 6);
  CHECK(parse_group_spec("perm: (1 2 3); (1 2)")->order() == 6);
  CHECK(parse_group_spec(" quaternion( 8 ) ")->order() == 8);
  CHECK_THROWS_AS(parse_group_spec("symmetric(6)"), InvalidArgument);
  CHECK_THROWS_AS(parse_group_spec("cyclic(3"), InvalidArgument);
  CHECK_THROWS_AS(parse_group_spec("banana(3)"), InvalidArgument);
  CHECK_THROWS_AS(parse_group_spec("perm: (1 2 x)"), InvalidArgument);
}

TEST_CASE("table laws and words on every preset") {
  Rng rng(1);
  for (auto& gp : all_presets()) {
    const Group& g = *gp;
    const std::size_t n = g.order();
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(g.mul(a, g.inv(a)) == 0);
      CHECK(g.mul(0, a) == a);
      // the word evaluates to the element
      Perm p = g.element(0);
      auto w = g.word(a);
      for (auto it = w.rbegin(); it != w.rend(); ++it) p = perm_compose(g.generator_perms()[*it], p);
      CHECK(p == g.element(a));
    }
    for (int t = 0; t < 1000; ++t) {
      const std::size_t a = rng.uniform(n), b = rng.uniform(n), c = rng.uniform(n);
      REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
      REQUIRE(g.element(g.mul(a, b)) == perm_compose(g.element(a), g.element(b)));
    }
  }
}

TEST_CASE("conjugacy classes") {
  CHECK(class_sizes(*cyclic_group(6)) == std::vector<std::size_t>(6, 1));
  CHECK(class_sizes(*symmetric_group(3)) == std::vector<std::size_t>{1, 2, 3});
  CHECK(class_sizes(*quaternion_group(8)) == std::vector<std::size_t>{1, 1, 2, 2, 2});
  CHECK(class_sizes(*alternating_group(5)) == std::vector<std::size_t>{1, 12, 12, 15, 20});
  // oracle: conjugation by every element
  for (auto& gp : all_presets()) {
    const Group& g = *gp;
    auto cc = conjugacy_classes(g);
    std::size_t total = 0;
    for (auto& c : cc.classes) total += c.size();
    CHECK(total == g.order());
    for (std::size_t x = 0; x < g.order(); ++x)
      for (std::size_t y = 0; y < g.order(); ++y) REQUIRE(cc.class_of[g.conj(y, x)] == cc.class_of[x]);
  }
}

TEST_CASE("sylow subgroups") {
  auto s3 = symmetric_group(3);
  CHECK(sylow(*s3, 3).order() == 3);
  CHECK(sylow(*s3, 2).order() == 2);
  auto sl = sl23_group();
  auto q = sylow(*sl, 2);
  CHECK(q.order() == 8);
  CHECK(classify_p_group(*sl, q, 2) == PGroupClass{QuaternionClass{3}});
  CHECK_THROWS_AS(sylow(*s3, 5), InvalidArgument);
  for (auto& gp : all_presets()) {
    const Group& g = *gp;
    for (std::size_t p : {2u, 3u, 5u}) {
      if (g.order() % p != 0) continue;
      auto h = sylow(g, p);
      CHECK(is_subgroup(g, h));
      // exact p-part by trial division
      std::size_t n = g.order(), pp = 1;
      while (n % p == 0) {
        n /= p;
        pp *= p;
      }
      CHECK(h.order() == pp);
    }
  }
}

TEST_CASE("p-group classification") {
  auto c9 = cyclic_group(9);
  CHECK(classify_p_group(*c9, whole_group(*c9), 3) == PGroupClass{CyclicClass{2}});
  auto q8 = quaternion_group(8);
  CHECK(classify_p_group(*q8, whole_group(*q8), 2) == PGroupClass{QuaternionClass{3}});
  auto v4 = dihedral_group(4);
  CHECK(std::holds_alternative<OtherClass>(classify_p_group(*v4, whole_group(*v4), 2)));
  CHECK(std::holds_alternative<OtherClass>(classify_p_group(*dihedral_group(8), whole_group(*dihedral_group(8)), 2)));
  for (std::size_t p : {2u, 3u, 5u, 7u}) {
    unsigned r = 1;
    for (std::size_t n = p; n <= 64; n *= p, ++r) {
      auto c = cyclic_group(n);
      CHECK(classify_p_group(*c, whole_group(*c), p) == PGroupClass{CyclicClass{r}});
    }
  }
  CHECK_THROWS_AS(classify_p_group(*cyclic_group(6), whole_group(*cyclic_group(6)), 2), InvalidArgument);
}

TEST_CASE("normalizers and centralizers") {
  auto s3 = symmetric_group(3);
  auto c3 = sylow(*s3, 3);
  CHECK(normalizer(*s3, c3).order() == 6);
  CHECK(centralizer(*s3, c3).order() == 3);
  auto a5 = alternating_group(5);
  CHECK(normalizer(*a5, sylow(*a5, 5)).order() == 10);
  auto q8 = quaternion_group(8);
  CHECK(center(*q8).order() == 2);
  CHECK(centralizer(*q8, whole_group(*q8)) == center(*q8));
  for (auto& gp : all_presets()) {
    const Group& g = *gp;
    for (std::size_t p : {2u, 3u}) {
      if (g.order() % p != 0) continue;
      auto h = sylow(g, p);
      auto n = normalizer(g, h);
      auto c = centralizer(g, h);
      CHECK(is_subgroup(g, n));
      CHECK(is_subgroup(g, c));
      for (auto x : h.members) CHECK(n.contains(x));
      for (auto x : n.members)
        for (auto y : h.members) CHECK(h.contains(g.conj(x, y)));
      for (auto x : c.members)
        for (auto y : h.members) CHECK(g.mul(x, y) == g.mul(y, x));
    }
  }
}

TEST_CASE("conj_auto_count") {
  CHECK(conj_auto_count(*symmetric_group(3), 3) == 2);
  CHECK(conj_auto_count(*cyclic_group(12), 3) == 1);
  CHECK(conj_auto_count(*dihedral_group(10), 5) == 2);
  CHECK(conj_auto_count(*alternating_group(5), 5) == 2);
  CHECK(conj_auto_count(*alternating_group(4), 3) == 1);
  CHECK_THROWS_AS(conj_auto_count(*alternating_group(4), 2), InvalidArgument);
}

TEST_CASE("embedded subgroups map into the parent") {
  auto a5 = alternating_group(5);
  auto n = normalizer(*a5, sylow(*a5, 5));
  auto e = subgroup_as_group(*a5, n, "N");
  CHECK(e.group->order() == 10);
  std::vector<std::size_t> image = e.to_parent;
  std::sort(image.begin(), image.end());
  CHECK(image == n.members);
  for (std::size_t a = 0; a < 10; ++a)
    for (std::size_t b = 0; b < 10; ++b)
      CHECK(e.to_parent[e.group->mul(a, b)] == a5->mul(e.to_parent[a], e.to_parent[b]));
}
