#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace stmod {

/// Permutation of {0, ..., n-1}: p[i] is the image of i.
using Perm = std::vector<std::uint16_t>;

/// Composition g*h: apply h first, then g.
Perm perm_compose(const Perm& g, const Perm& h);
Perm perm_inverse(const Perm& g);
/// Cycle notation with 1-based points, e.g. "(1 2 3)(4 5)".
std::string perm_to_cycles(const Perm& g);
/// Parses cycle notation; degree is raised to cover every point mentioned.
Perm parse_cycles(const std::string& text, std::size_t degree = 0);

inline constexpr std::size_t kMaxGroupOrder = 5000;

/// A finite permutation group stored as a closed multiplication table.
/// Element 0 is the identity; indices follow breadth-first discovery order
/// from the generators, so element y = s * x is first reached from its BFS
/// parent x by the generator s.
class Group {
 public:
  /// Breadth-first closure; throws InvalidArgument past the limit.
  static Group close(const std::vector<Perm>& generators, std::size_t limit = kMaxGroupOrder,
                     std::string name = "");

  const std::string& name() const { return name_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  const Perm& element(std::size_t i) const { return elements_[i]; }
  /// Index of a permutation in the group, or -1.
  long index_of(const Perm& g) const;

  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t conj(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv(g)); }
  std::size_t pow(std::size_t a, std::uint64_t e) const;
  std::size_t element_order(std::size_t a) const;
  std::size_t exponent() const;

  /// Group elements that are the given generators (may repeat or be 0).
  const std::vector<std::size_t>& generators() const { return generators_; }
  const std::vector<Perm>& generator_perms() const { return generator_perms_; }
  /// BFS parent: element(i) = generator(parent_gen(i)) * element(parent(i)).
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  std::size_t parent_gen(std::size_t i) const { return parent_gen_[i]; }
  /// Generator positions w with element(i) = g_{w0} g_{w1} ... (shortest).
  std::vector<std::size_t> word(std::size_t i) const;

 private:
  std::string name_;
  std::size_t degree_ = 0;
  std::vector<Perm> elements_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> inverse_;
  std::vector<std::size_t> generators_;
  std::vector<Perm> generator_perms_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_gen_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// A subgroup, as a sorted set of indices into its parent.
struct Subgroup {
  std::vector<std::size_t> members;
  std::size_t order() const { return members.size(); }
  bool contains(std::size_t g) const;
  bool operator==(const Subgroup&) const = default;
};

/// Subgroup generated by the given elements.
Subgroup generate_subgroup(const Group& g, const std::vector<std::size_t>& gens);
Subgroup whole_group(const Group& g);
/// Checks identity, closure and Lagrange.
bool is_subgroup(const Group& g, const Subgroup& h);
/// A small generating set, chosen greedily by increasing index.
std::vector<std::size_t> subgroup_generators(const Group& g, const Subgroup& h);

/// A subgroup re-closed as a group in its own right, with the element map back.
struct EmbeddedSubgroup {
  GroupPtr group;
  std::vector<std::size_t> to_parent;  // indexed by element of `group`
};
EmbeddedSubgroup subgroup_as_group(const Group& g, const Subgroup& h, std::string name = "");

struct ConjClasses {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> representatives;
  std::vector<std::size_t> class_of;  // element -> class index
};
/// Classes ordered by smallest member, members sorted.
ConjClasses conjugacy_classes(const Group& g);

Subgroup normalizer(const Group& g, const Subgroup& h);
Subgroup centralizer(const Group& g, const Subgroup& h);
Subgroup center(const Group& g);
/// Exact power of p dividing |G|.
std::size_t p_part(std::size_t n, std::size_t p);
Subgroup sylow(const Group& g, std::size_t p);

struct CyclicClass {
  unsigned r;  // |H| = p^r
  bool operator==(const CyclicClass&) const = default;
};
struct QuaternionClass {
  unsigned n;  // |H| = 2^n
  bool operator==(const QuaternionClass&) const = default;
};
struct OtherClass {
  bool operator==(const OtherClass&) const = default;
};
using PGroupClass = std::variant<CyclicClass, QuaternionClass, OtherClass>;

PGroupClass classify_p_group(const Group& g, const Subgroup& h, std::size_t p);
std::string describe(const PGroupClass& c, std::size_t p);

/// Number of automorphisms of the Sylow p-subgroup D induced by conjugation:
/// [N_G(D) : C_G(D)]. Requires D cyclic.
std::size_t conj_auto_count(const Group& g, std::size_t p);

}  // namespace stmod
