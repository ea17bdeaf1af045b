#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stmod/blocks.hpp"
#include "stmod/meataxe.hpp"
#include "stmod/stable.hpp"

namespace stmod {

enum class Prediction { Holds, Fails, OutOfScope };
std::string to_string(Prediction p);

struct SylowInfo {
  std::size_t order = 1;  // p^n
  PGroupClass cls;
  std::size_t phi = 0;  // [N_G(D) : C_G(D)] when D is cyclic, else 0
  bool normal = false;
};
SylowInfo sylow_info(const Group& g, std::size_t p);

/// Artin-Tate: the Sylow p-subgroup is cyclic or generalized quaternion.
bool has_periodic_cohomology(const Group& g, std::size_t p);
/// Period of k predicted from the Sylow type; throws InvalidArgument when
/// the cohomology is not periodic.
int swan_period(const Group& g, std::size_t p);

/// Green/Curtis-Reiner counts of non-projective indecomposables when the
/// Sylow subgroup is cyclic of order p^r.
struct CrCounts {
  std::size_t s = 0;  // simple modules
  std::size_t e = 0;  // simple modules in the principal block
  std::size_t pr_minus_1 = 0;
  std::size_t total = 0;      // s (p^r - 1)
  std::size_t per_block = 0;  // e (p^r - 1)
};
CrCounts cr_counts(const GroupAlgebra& a);

/// Why the heart is no suspension of k: per degree of one period, either
/// the dimensions differ or an isomorphism test failed.
struct NonSuspension {
  int degree;
  std::size_t omega_dim;
  bool by_dimension;
};

struct HeartData {
  Module h;  // rad P / soc P
  Module p;  // projective cover of k
  std::size_t pn = 1;
  std::size_t residue = 0;  // dim H mod p^n
  bool indecomposable = false;
  std::size_t summands = 0;  // count from the certified decomposition
  std::vector<NonSuspension> non_suspension;  // empty unless a period is supplied
  bool sequence_exact = false;  // rad P -> H + P -> P / soc P
  bool cofiber_matches = false;  // cofiber of soc P -> rad P is H + P
  std::optional<int> suspension_degree;  // set when H is stably some Omega^i k
};
HeartData heart(const StableCategory& st, const PeriodCertificate* cert = nullptr, bool check_cofiber = true);

struct SplittingResult {
  std::vector<int> exponents;              // one per matched summand
  std::vector<Module> counterexamples;     // unmatched, principal block
  std::size_t projective_dim = 0;  // dimension of the projective part
  std::size_t other_block_summands = 0;
  bool splits() const { return counterexamples.empty(); }
};
SplittingResult verify_suspension_splitting(const StableCategory& st, const Module& m, const PeriodCertificate& cert,
                                            const BlockIdempotent& b0);

struct BatteryMember {
  std::string label;
  Module module;
  bool in_principal_block = false;
};
/// Omega^i k, their pairwise tensors, the heart, cofibers of random stable
/// maps between suspensions, and principal-block components of modules
/// induced from the Sylow subgroup.
std::vector<BatteryMember> battery(const StableCategory& st, const PeriodCertificate& cert, const BlockIdempotent& b0,
                                   std::uint64_t seed, std::size_t cofibers = 10);

/// Non-projective indecomposables reachable from PIM radical layers, the
/// battery, Omega orbits and tensoring with simples, up to isomorphism.
struct Enumeration {
  std::vector<Module> modules;
  std::vector<bool> in_principal_block;
  std::size_t principal_count() const;
};
Enumeration enumerate_indecomposables(const StableCategory& st, const PeriodCertificate& cert,
                                      const BlockIdempotent& b0, std::uint64_t seed, std::size_t limit = 400);

struct GhostCandidate {
  std::string label;
  std::size_t source_dim = 0;
  GhostCertificate cert;
};
/// Universal ghosts restricted to degrees lo..hi out of the heart and the
/// summands of modules induced from the Sylow subgroup; keeps those that
/// are stably nonzero.
std::vector<GhostCandidate> ghost_search(const StableCategory& st, int lo, int hi, std::size_t budget = 8);

struct BatteryReport {
  std::string label;
  std::size_t dim = 0;
  std::vector<int> exponents;
  std::size_t projective_dim = 0;
  std::size_t counterexamples = 0;
  bool identity_ghost = false;  // identity is a ghost, hence projective
};

struct CaseTwoCheck {
  std::size_t w_dim = 0;
  bool w_not_trivial = false;
  bool w_squared_trivial = false;
};

struct Verdict {
  std::string group;
  std::size_t p = 0;
  std::string field;
  std::string sylow;
  Prediction predicted = Prediction::OutOfScope;
  std::optional<int> period;  // computed
  std::optional<int> swan;
  std::optional<CrCounts> cr;
  std::optional<std::size_t> enumerated_total, enumerated_per_block;
  std::optional<HeartData> heart;
  std::optional<UniversalGhost> witness;
  std::vector<BatteryReport> battery;
  std::optional<std::size_t> distinct_suspensions;
  std::optional<CaseTwoCheck> case_two;
  std::vector<GhostCandidate> candidates;  // OutOfScope only
  int search_lo = 0, search_hi = 0;
  std::uint64_t seed = 1;
};

struct VerdictOptions {
  std::uint64_t seed = 1;
  std::size_t cofibers = 10;
  int search_lo = -8, search_hi = 8;
  bool search = true;         // run the finite-range search when out of scope
  bool enumerate = true;      // cross-check Curtis-Reiner counts by enumeration
};
Verdict gh_verdict(const GroupPtr& g, std::size_t p, const Field& f, const VerdictOptions& opt = {});

struct ReductionSide {
  std::string group;
  std::size_t order = 0;
  int period = 0;
  std::size_t e = 0;
  std::size_t cr_per_block = 0;
};
struct ReductionReport {
  ReductionSide g, n;
  bool equal = false;
};
/// Compares G with the normalizer of the order-p subgroup of its Sylow.
ReductionReport reduction_check(const GroupPtr& g, std::size_t p, const Field& f, std::uint64_t seed = 1);

}  // namespace stmod
