#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "stmod/algebra.hpp"

namespace stmod {

/// Hom(M,N) modulo the maps factoring through a projective.
struct StableHom {
  std::vector<Matrix> hom;   // basis of Hom(M, N)
  Matrix phom;               // rows: flattened basis of PHom(M, N)
  std::vector<Matrix> reps;  // maps whose classes form a basis of the quotient
  std::size_t dim() const { return reps.size(); }
};

struct PeriodCertificate {
  int d = 0;
  std::vector<std::size_t> dims;  // dim Omega^i k for 0 <= i < d
  Matrix witness;                 // isomorphism Omega^d k -> k
  std::size_t pn = 1;             // order of a Sylow p-subgroup
};

enum class GhostQuality { Full, FiniteRange };

struct DegreeEvidence {
  int degree;
  std::size_t tate_dim;  // dim of the stable hom from Omega^degree k to the source
  bool vanishes;         // f kills every class
};

struct GhostCertificate {
  GhostQuality quality = GhostQuality::FiniteRange;
  int lo = 0, hi = 0;  // degrees checked, inclusive
  std::vector<DegreeEvidence> degrees;
  bool ghost = false;
  std::optional<int> failing_degree;
  bool stably_nonzero = false;
  /// rank([PHom; f]) - rank(PHom), positive exactly when f is stably nonzero.
  std::size_t rank_gap = 0;
};

/// X -> M -> C with C = (M + I(X)) / {(g x, -iota x)}.
struct Triangle {
  ModuleMap g;      // X -> M
  ModuleMap h;      // M -> C
  ModuleMap delta;  // C -> I(X)/iota(X), a model of Omega^{-1} X
  ModuleMap iota;   // X -> I(X)
  ModuleMap hull_map;  // I(X) -> C, with h g = hull_map iota
};

/// The universal ghost is certified by factorization: every Tate class in
/// range is a component of g, and h g = hull_map iota factors through the
/// projective I(X). is_ghost gives an independent check.
struct UniversalGhost {
  Module x;                 // sum of suspensions of k, one block per Tate class
  std::vector<int> degree_of_block;  // degree i of each Omega^i k summand of x
  Triangle triangle;        // x -> M -> U_M
  GhostCertificate cert;    // for triangle.h
  bool stably_trivial = false;  // by membership of h in PHom
  bool split_epi = false;       // second route: g is a split epimorphism in stmod
};

/// The stable module category of kG at the level of finitely generated
/// modules, with cached syzygies of k.
class StableCategory {
 public:
  explicit StableCategory(AlgebraPtr a);

  const GroupAlgebra& algebra() const { return *a_; }
  const AlgebraPtr& algebra_ptr() const { return a_; }

  /// Sum of the non-projective summands of M (with its embedding into M).
  SubQuotient projective_free_part(const Module& m) const;
  /// Omega^n M; n = 0 gives the projective-free part, negative n uses duality.
  Module syzygy(const Module& m, int n) const;
  /// Omega^i k, cached.
  const Module& omega_k(int i) const;

  /// Rows: flattened basis of the maps M -> N factoring through a projective.
  /// Computed as pi_N o Hom(M, P(N)): any map through a projective Q lifts
  /// along the cover P(N) -> N because Q is projective.
  Matrix phom_subspace(const Module& m, const Module& n) const;
  StableHom stable_hom(const Module& m, const Module& n) const;
  /// Tate cohomology H^i(G, M) as stable_hom(Omega^i k, M).
  StableHom tate(const Module& m, int i) const;

  /// Smallest d >= 1 with Omega^d k isomorphic to k, searched up to max_d
  /// (0 means 4 |P|); nullopt when none is found in range.
  std::optional<PeriodCertificate> period(int max_d = 0) const;

  bool is_stably_trivial(const ModuleMap& f) const;
  /// rank([PHom; f]) - rank(PHom): 1 when f is stably nonzero, else 0.
  std::size_t rank_gap(const ModuleMap& f) const;
  /// Checks degrees lo..hi.
  GhostCertificate is_ghost(const ModuleMap& f, int lo, int hi, GhostQuality q = GhostQuality::FiniteRange) const;
  /// Checks one full period, which covers every degree.
  GhostCertificate is_ghost(const ModuleMap& f, const PeriodCertificate& cert) const;

  /// Injective hull, as the dual of the projective cover of the dual.
  std::pair<Module, Matrix> injective_hull(const Module& x) const;
  Triangle cofiber(const ModuleMap& g) const;

  /// Universal ghost out of M built from the Tate classes in degrees lo..hi.
  UniversalGhost universal_ghost(const Module& m, int lo, int hi, GhostQuality q) const;
  UniversalGhost universal_ghost(const Module& m, const PeriodCertificate& cert) const;

  bool stable_iso(const Module& a, const Module& b) const;

 private:
  AlgebraPtr a_;
  mutable std::mutex mutex_;
  mutable std::map<int, Module> omega_;
};

}  // namespace stmod
