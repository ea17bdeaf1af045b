#include "stmod/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "stmod/error.hpp"

namespace stmod {

Perm perm_compose(const Perm& g, const Perm& h) {
  require(g.size() == h.size(), "permutation degree mismatch");
  Perm r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = g[h[i]];
  return r;
}

Perm perm_inverse(const Perm& g) {
  Perm r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[g[i]] = static_cast<std::uint16_t>(i);
  return r;
}

std::string perm_to_cycles(const Perm& g) {
  std::string out;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (seen[i] || g[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = g[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Perm parse_cycles(const std::string& text, std::size_t degree) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) {
    throw InvalidArgument("cycle notation: " + what + " at position " + std::to_string(pos));
  };
  skip();
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<std::size_t> cyc;
    while (true) {
      skip();
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a point");
      std::size_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (v > 65535) fail("point too large");
        ++pos;
      }
      if (v == 0) fail("points are 1-based");
      if (std::find(cyc.begin(), cyc.end(), v - 1) != cyc.end()) fail("repeated point in cycle");
      cyc.push_back(v - 1);
      degree = std::max(degree, v);
    }
    cycles.push_back(std::move(cyc));
    skip();
  }
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  // cycles compose right to left, matching perm_compose
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    Perm c(degree);
    std::iota(c.begin(), c.end(), 0);
    for (std::size_t i = 0; i < it->size(); ++i) c[(*it)[i]] = static_cast<std::uint16_t>((*it)[(i + 1) % it->size()]);
    p = perm_compose(c, p);
  }
  return p;
}

Group Group::close(const std::vector<Perm>& generators, std::size_t limit, std::string name) {
  Group g;
  g.name_ = std::move(name);
  std::size_t degree = 1;
  for (const auto& s : generators) degree = std::max(degree, s.size());
  g.degree_ = degree;
  for (auto s : generators) {
    // pad to a common degree with fixed points
    for (std::size_t i = s.size(); i < degree; ++i) s.push_back(static_cast<std::uint16_t>(i));
    Perm check = s;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < degree; ++i) require(check[i] == i, "generator is not a permutation");
    g.generator_perms_.push_back(std::move(s));
  }
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::map<Perm, std::size_t> index;
  g.elements_.push_back(id);
  g.parent_.push_back(0);
  g.parent_gen_.push_back(0);
  index.emplace(id, 0);
  const std::size_t ns = g.generator_perms_.size();
  std::vector<std::vector<std::size_t>> left(ns);  // left[s][x] = index of s*x
  for (std::size_t x = 0; x < g.elements_.size(); ++x) {
    for (std::size_t s = 0; s < ns; ++s) {
      Perm y = perm_compose(g.generator_perms_[s], g.elements_[x]);
      auto [it, fresh] = index.emplace(std::move(y), g.elements_.size());
      if (fresh) {
        if (g.elements_.size() >= limit) {
          throw InvalidArgument("group order exceeds the limit of " + std::to_string(limit));
        }
        g.elements_.push_back(it->first);
        g.parent_.push_back(x);
        g.parent_gen_.push_back(s);
      }
      left[s].push_back(it->second);
    }
  }
  const std::size_t n = g.elements_.size();
  g.table_.assign(n * n, 0);
  for (std::size_t b = 0; b < n; ++b) g.table_[b] = static_cast<std::uint16_t>(b);
  for (std::size_t a = 1; a < n; ++a) {
    const auto& l = left[g.parent_gen_[a]];
    const std::uint16_t* prow = &g.table_[g.parent_[a] * n];
    std::uint16_t* row = &g.table_[a * n];
    for (std::size_t b = 0; b < n; ++b) row[b] = static_cast<std::uint16_t>(l[prow[b]]);
  }
  g.inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g.table_[a * n + b] == 0) {
        g.inverse_[a] = static_cast<std::uint16_t>(b);
        break;
      }
    }
  }
  for (const auto& s : g.generator_perms_) g.generators_.push_back(index.at(s));
  return g;
}

long Group::index_of(const Perm& p) const {
  if (p.size() != degree_) return -1;
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == p) return static_cast<long>(i);
  return -1;
}

std::size_t Group::pow(std::size_t a, std::uint64_t e) const {
  std::size_t r = 0, b = a;
  while (e > 0) {
    if (e & 1u) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::size_t Group::element_order(std::size_t a) const {
  std::size_t k = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::size_t Group::exponent() const {
  std::size_t e = 1;
  for (std::size_t a = 0; a < order(); ++a) e = std::lcm(e, element_order(a));
  return e;
}

std::vector<std::size_t> Group::word(std::size_t i) const {
  std::vector<std::size_t> w;
  while (i != 0) {
    w.push_back(parent_gen_[i]);
    i = parent_[i];
  }
  return w;
}

bool Subgroup::contains(std::size_t g) const { return std::binary_search(members.begin(), members.end(), g); }

Subgroup generate_subgroup(const Group& g, const std::vector<std::size_t>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<std::size_t> list{0};
  in[0] = true;
  for (std::size_t k = 0; k < list.size(); ++k) {
    for (auto s : gens) {
      const std::size_t y = g.mul(s, list[k]);
      if (!in[y]) {
        in[y] = true;
        list.push_back(y);
      }
    }
  }
  std::sort(list.begin(), list.end());
  return Subgroup{std::move(list)};
}

Subgroup whole_group(const Group& g) {
  Subgroup h;
  h.members.resize(g.order());
  std::iota(h.members.begin(), h.members.end(), 0);
  return h;
}

bool is_subgroup(const Group& g, const Subgroup& h) {
  if (h.members.empty() || h.members[0] != 0) return false;
  if (!std::is_sorted(h.members.begin(), h.members.end())) return false;
  if (g.order() % h.order() != 0) return false;
  for (auto a : h.members) {
    if (a >= g.order() || !h.contains(g.inv(a))) return false;
    for (auto b : h.members)
      if (!h.contains(g.mul(a, b))) return false;
  }
  return true;
}

std::vector<std::size_t> subgroup_generators(const Group& g, const Subgroup& h) {
  std::vector<std::size_t> gens;
  Subgroup cur{{0}};
  for (auto x : h.members) {
    if (cur.order() == h.order()) break;
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = generate_subgroup(g, gens);
  }
  return gens;
}

EmbeddedSubgroup subgroup_as_group(const Group& g, const Subgroup& h, std::string name) {
  const auto gens = subgroup_generators(g, h);
  std::vector<Perm> perms;
  for (auto x : gens) perms.push_back(g.element(x));
  if (perms.empty()) perms.push_back(g.element(0));
  auto sub = std::make_shared<Group>(Group::close(perms, kMaxGroupOrder, std::move(name)));
  EmbeddedSubgroup out;
  out.to_parent.resize(sub->order());
  // BFS parents map through the parent's multiplication table
  const auto& sg = sub->generators();
  std::vector<std::size_t> gen_parent(sg.size());
  for (std::size_t s = 0; s < sg.size(); ++s) gen_parent[s] = gens.empty() ? 0 : gens[s];
  out.to_parent[0] = 0;
  for (std::size_t i = 1; i < sub->order(); ++i) {
    out.to_parent[i] = g.mul(gen_parent[sub->parent_gen(i)], out.to_parent[sub->parent(i)]);
  }
  ensure(sub->order() == h.order(), "subgroup re-closure changed the order");
  out.group = std::move(sub);
  return out;
}

ConjClasses conjugacy_classes(const Group& g) {
  ConjClasses cc;
  const std::size_t n = g.order();
  const std::size_t none = n;
  cc.class_of.assign(n, none);
  for (std::size_t x = 0; x < n; ++x) {
    if (cc.class_of[x] != none) continue;
    const std::size_t id = cc.classes.size();
    std::vector<std::size_t> orbit{x};
    cc.class_of[x] = id;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (auto s : g.generators()) {
        const std::size_t y = g.conj(s, orbit[k]);
        if (cc.class_of[y] == none) {
          cc.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    cc.representatives.push_back(x);
    cc.classes.push_back(std::move(orbit));
  }
  return cc;
}

Subgroup normalizer(const Group& g, const Subgroup& h) {
  const auto gens = subgroup_generators(g, h);
  Subgroup n;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto s : gens) {
      if (!h.contains(g.conj(x, s))) {
        ok = false;
        break;
      }
    }
    if (ok) n.members.push_back(x);
  }
  return n;
}

Subgroup centralizer(const Group& g, const Subgroup& h) {
  const auto gens = subgroup_generators(g, h);
  Subgroup c;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto s : gens) {
      if (g.mul(x, s) != g.mul(s, x)) {
        ok = false;
        break;
      }
    }
    if (ok) c.members.push_back(x);
  }
  return c;
}

Subgroup center(const Group& g) { return centralizer(g, whole_group(g)); }

std::size_t p_part(std::size_t n, std::size_t p) {
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

namespace {

bool is_p_power(std::size_t n, std::size_t p) { return p_part(n, p) == n; }

}  // namespace

Subgroup sylow(const Group& g, std::size_t p) {
  require(p >= 2 && g.order() % p == 0, "p does not divide the group order");
  const std::size_t target = p_part(g.order(), p);
  std::vector<std::size_t> gens;
  for (std::size_t x = 1; x < g.order(); ++x) {
    if (is_p_power(g.element_order(x), p)) {
      gens.push_back(x);
      break;
    }
  }
  Subgroup h = generate_subgroup(g, gens);
  while (h.order() < target) {
    const Subgroup n = normalizer(g, h);
    bool grown = false;
    for (auto x : n.members) {
      if (h.contains(x)) continue;
      // x H has p-power order in N/H iff some x^{p^k} lies in H
      std::size_t y = x;
      for (std::size_t k = 0; k < 32 && !h.contains(y); ++k) y = g.pow(y, p);
      if (!h.contains(y)) continue;
      auto next_gens = gens;
      next_gens.push_back(x);
      Subgroup bigger = generate_subgroup(g, next_gens);
      if (!is_p_power(bigger.order(), p)) continue;
      gens = std::move(next_gens);
      h = std::move(bigger);
      grown = true;
      break;
    }
    ensure(grown, "Sylow extension step found no p-element in the normalizer");
  }
  return h;
}

PGroupClass classify_p_group(const Group& g, const Subgroup& h, std::size_t p) {
  require(is_p_power(h.order(), p), "subgroup is not a p-group");
  unsigned r = 0;
  for (std::size_t n = h.order(); n > 1; n /= p) ++r;
  std::size_t involutions = 0;
  for (auto x : h.members) {
    const std::size_t o = g.element_order(x);
    if (o == h.order()) return CyclicClass{r};
    if (o == 2) ++involutions;
  }
  if (p == 2 && h.order() >= 8 && involutions == 1) return QuaternionClass{r};
  return OtherClass{};
}

std::string describe(const PGroupClass& c, std::size_t p) {
  if (auto* cy = std::get_if<CyclicClass>(&c)) {
    std::size_t n = 1;
    for (unsigned i = 0; i < cy->r; ++i) n *= p;
    return "C_" + std::to_string(n);
  }
  if (auto* q = std::get_if<QuaternionClass>(&c)) return "Q_" + std::to_string(std::size_t{1} << q->n);
  return "other";
}

std::size_t conj_auto_count(const Group& g, std::size_t p) {
  const Subgroup d = sylow(g, p);
  require(std::holds_alternative<CyclicClass>(classify_p_group(g, d, p)), "Sylow subgroup is not cyclic");
  return normalizer(g, d).order() / centralizer(g, d).order();
}

}  // namespace stmod
