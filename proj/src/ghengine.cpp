#include "stmod/ghengine.hpp"

#include <algorithm>

#include "stmod/error.hpp"
#include "stmod/rng.hpp"

namespace stmod {

namespace {

// Rows spanning rad^j M, computed one radical layer at a time.
Matrix radical_power(const GroupAlgebra& a, const Module& m, std::size_t j) {
  Matrix cur = Matrix::identity(m.field(), m.dim());
  for (std::size_t t = 0; t < j && cur.rows() > 0; ++t) {
    const SubQuotient sub = submodule(m, cur);
    cur = a.radical(sub.module) * sub.lift.transpose();
  }
  return cur;
}

std::size_t loewy_length(const GroupAlgebra& a, const Module& m) {
  std::size_t j = 0;
  for (Matrix cur = Matrix::identity(m.field(), m.dim()); cur.rows() > 0; ++j) {
    const SubQuotient sub = submodule(m, cur);
    cur = a.radical(sub.module) * sub.lift.transpose();
  }
  return j;
}

bool is_cyclic(const SylowInfo& s) { return std::holds_alternative<CyclicClass>(s.cls); }

// Modules induced from the uniserial-by-layers quotients kD / rad^j kD of the Sylow subgroup.
std::vector<std::pair<std::string, Module>> induced_from_sylow(const GroupAlgebra& a) {
  const std::size_t p = a.field().p();
  const EmbeddedSubgroup d = subgroup_as_group(a.group(), sylow(a.group(), p), "D");
  const auto ad = GroupAlgebra::get(d.group, a.field(), a.seed());
  const Module& kd = ad->regular();
  std::vector<std::pair<std::string, Module>> out;
  const std::size_t ll = loewy_length(*ad, kd);
  for (std::size_t j = 1; j < ll; ++j) {
    const Module q = quotient(kd, radical_power(*ad, kd, j)).module;
    out.emplace_back("induced kD/rad^" + std::to_string(j) + "(kD)", induce(q, d, a.group_ptr()));
  }
  return out;
}

}  // namespace

std::string to_string(Prediction p) {
  switch (p) {
    case Prediction::Holds:
      return "Holds";
    case Prediction::Fails:
      return "Fails";
    default:
      return "OutOfScope";
  }
}

SylowInfo sylow_info(const Group& g, std::size_t p) {
  require(g.order() % p == 0, "p does not divide the group order");
  SylowInfo s;
  const Subgroup d = sylow(g, p);
  s.order = d.order();
  s.cls = classify_p_group(g, d, p);
  if (is_cyclic(s)) s.phi = conj_auto_count(g, p);
  s.normal = normalizer(g, d).order() == g.order();
  return s;
}

bool has_periodic_cohomology(const Group& g, std::size_t p) {
  return !std::holds_alternative<OtherClass>(sylow_info(g, p).cls);
}

int swan_period(const Group& g, std::size_t p) {
  const SylowInfo s = sylow_info(g, p);
  require(!std::holds_alternative<OtherClass>(s.cls), "cohomology is not periodic");
  if (std::holds_alternative<QuaternionClass>(s.cls)) return 4;
  if (p == 2) return std::get<CyclicClass>(s.cls).r == 1 ? 1 : 2;
  return 2 * static_cast<int>(s.phi);
}

CrCounts cr_counts(const GroupAlgebra& a) {
  const SylowInfo s = sylow_info(a.group(), a.field().p());
  require(is_cyclic(s), "Sylow subgroup is not cyclic");
  CrCounts c;
  c.s = a.simples().size();
  c.e = principal_block(central_primitive_idempotents(a)).simples.size();
  c.pr_minus_1 = s.order - 1;
  c.total = c.s * c.pr_minus_1;
  c.per_block = c.e * c.pr_minus_1;
  return c;
}

HeartData heart(const StableCategory& st, const PeriodCertificate* cert, bool check_cofiber) {
  const GroupAlgebra& a = st.algebra();
  const Field& f = a.field();
  HeartData hd;
  hd.p = a.pims()[0];
  const Module& p = hd.p;
  const Matrix rad = a.radical(p);
  const Matrix soc = a.socle(p);
  const SubQuotient hq = sub_quotient(p, rad, soc);
  hd.h = hq.module;
  hd.pn = a.sylow_order();
  hd.residue = hd.h.dim() % hd.pn;
  ensure((hd.residue + 2) % hd.pn == 0, "dim H is not -2 mod p^n");

  if (hd.h.dim() > 0) {
    const Decomposition dec = decompose(hd.h, a.seed());
    hd.summands = dec.summands.size();
    hd.indecomposable = hd.summands == 1 && dec.summands[0].certified;
  }

  // 0 -> rad P -> H + P -> P/soc P -> 0 with x |-> (x mod soc, x) and (h, y) |-> h - y mod soc
  const SubQuotient r = submodule(p, rad);
  const SubQuotient q = quotient(p, soc);
  const Module mid = direct_sum(hd.h, p);
  const Matrix alpha = Matrix::vstack(hq.proj * r.lift, r.lift);
  const Matrix beta = Matrix::hstack(q.proj * hq.lift, q.proj.scaled(f.neg(1)));
  hd.sequence_exact = is_equivariant(r.module, mid, alpha) && is_equivariant(mid, q.module, beta) &&
                      (beta * alpha).is_zero() && rank(alpha) == r.module.dim() &&
                      rank(beta) == q.module.dim() && r.module.dim() + q.module.dim() == mid.dim();
  ensure(hd.sequence_exact, "the heart sequence is not exact");

  if (check_cofiber) {
    const SubQuotient soc_in_rad = submodule(r.module, (r.proj * soc.transpose()).transpose());
    const Triangle t = st.cofiber(ModuleMap{soc_in_rad.module, r.module, soc_in_rad.lift});
    hd.cofiber_matches = is_isomorphic(t.h.target, mid, a.seed()).isomorphic;
    ensure(hd.cofiber_matches, "cofiber of soc P -> rad P is not H + P");
  }

  if (cert && hd.h.dim() > 0)
    for (int i = 0; i < cert->d; ++i) {
      const Module& om = st.omega_k(i);
      if (om.dim() != hd.h.dim()) {
        hd.non_suspension.push_back({i, om.dim(), true});
      } else if (!st.stable_iso(hd.h, om)) {
        hd.non_suspension.push_back({i, om.dim(), false});
      } else {
        hd.suspension_degree = i;
      }
    }
  return hd;
}

SplittingResult verify_suspension_splitting(const StableCategory& st, const Module& m, const PeriodCertificate& cert,
                                            const BlockIdempotent& b0) {
  const GroupAlgebra& a = st.algebra();
  SplittingResult res;
  if (m.dim() == 0) return res;
  const Module pf = st.projective_free_part(m).module;
  res.projective_dim = m.dim() - pf.dim();
  if (pf.dim() == 0) return res;
  const Decomposition dec = decompose(pf, a.seed());
  for (const auto& s : dec.summands) {
    if (!lies_in_block(a, s.module, b0)) {
      ++res.other_block_summands;
      continue;
    }
    std::optional<int> match;
    for (int i = 0; i < cert.d && !match; ++i) {
      const Module& om = st.omega_k(i);
      if (om.dim() == s.module.dim() && is_isomorphic(om, s.module, a.seed()).isomorphic) match = i;
    }
    if (match)
      res.exponents.push_back(*match);
    else
      res.counterexamples.push_back(s.module);
  }
  std::sort(res.exponents.begin(), res.exponents.end());
  return res;
}

std::vector<BatteryMember> battery(const StableCategory& st, const PeriodCertificate& cert, const BlockIdempotent& b0,
                                   std::uint64_t seed, std::size_t cofibers) {
  const GroupAlgebra& a = st.algebra();
  const Field& f = a.field();
  std::vector<BatteryMember> out;
  auto add = [&](std::string label, Module m) {
    if (m.dim() == 0) return;
    const bool in = lies_in_block(a, m, b0);
    out.push_back({std::move(label), std::move(m), in});
  };
  const int d = cert.d;
  for (int i = 0; i < d; ++i) add("Omega^" + std::to_string(i) + " k", st.omega_k(i));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      add("Omega^" + std::to_string(i) + " k (x) Omega^" + std::to_string(j) + " k",
          tensor(st.omega_k(i), st.omega_k(j)));
  add("heart", heart(st, nullptr, false).h);

  Rng rng(seed);
  for (std::size_t c = 0; c < cofibers; ++c) {
    const int i = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(d)));
    const int j = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(d)));
    const Module& x = st.omega_k(i);
    const Module& y = st.omega_k(j);
    const StableHom sh = st.stable_hom(x, y);
    Matrix map(f, y.dim(), x.dim());
    for (const auto& r : sh.reps) map.add_scaled(r, static_cast<Elem>(rng.uniform(f.q())));
    const Triangle t = st.cofiber(ModuleMap{x, y, map});
    add("cofiber of a stable map Omega^" + std::to_string(i) + " k -> Omega^" + std::to_string(j) + " k",
        t.h.target);
  }

  for (auto& [label, m] : induced_from_sylow(a)) add("B0 part of " + label, block_component(a, m, b0).module);
  return out;
}

std::size_t Enumeration::principal_count() const {
  return static_cast<std::size_t>(std::count(in_principal_block.begin(), in_principal_block.end(), true));
}

Enumeration enumerate_indecomposables(const StableCategory& st, const PeriodCertificate& cert,
                                      const BlockIdempotent& b0, std::uint64_t seed, std::size_t limit) {
  const GroupAlgebra& a = st.algebra();
  Enumeration en;
  std::vector<Module> queue;
  // adds an indecomposable module, returning whether it was new
  auto add = [&](const Module& m) {
    if (m.dim() == 0 || a.is_projective(m) || en.modules.size() >= limit) return;
    for (const auto& e : en.modules)
      if (e.dim() == m.dim() && is_isomorphic(e, m, a.seed()).isomorphic) return;
    en.modules.push_back(m);
    en.in_principal_block.push_back(lies_in_block(a, m, b0));
    queue.push_back(m);
  };
  auto add_summands = [&](const Module& m) {
    const Module pf = st.projective_free_part(m).module;
    if (pf.dim() == 0) return;
    for (const auto& s : decompose(pf, a.seed()).summands) add(s.module);
  };

  // radical layers of the PIMs: simple top or simple socle, hence indecomposable
  for (const auto& p : a.pims()) {
    const std::size_t ll = loewy_length(a, p);
    for (std::size_t j = 1; j < ll; ++j) {
      const Matrix rj = radical_power(a, p, j);
      add(submodule(p, rj).module);
      add(quotient(p, rj).module);
    }
  }
  for (const auto& b : battery(st, cert, b0, seed, 4)) add_summands(b.module);

  while (!queue.empty() && en.modules.size() < limit) {
    const Module m = queue.back();
    queue.pop_back();
    add(st.syzygy(m, 1));
    add(st.syzygy(m, -1));
    for (std::size_t s = 1; s < a.simples().size(); ++s) add_summands(tensor(m, a.simples()[s]));
  }
  return en;
}

std::vector<GhostCandidate> ghost_search(const StableCategory& st, int lo, int hi, std::size_t budget) {
  const GroupAlgebra& a = st.algebra();
  const std::size_t p = a.field().p();
  require(lo <= hi, "empty degree range");
  GhostQuality quality = GhostQuality::FiniteRange;
  if (has_periodic_cohomology(a.group(), p)) {
    const auto cert = st.period();
    ensure(cert.has_value(), "periodic group without a period in range");
    if (hi - lo + 1 >= cert->d) quality = GhostQuality::Full;
  }
  const BlockIdempotent b0 = principal_block(central_primitive_idempotents(a));

  std::vector<std::pair<std::string, Module>> sources;
  auto consider = [&](const std::string& label, const Module& m) {
    if (sources.size() >= budget || m.dim() == 0 || a.is_projective(m) || !lies_in_block(a, m, b0)) return;
    for (const auto& [l, s] : sources)
      if (s.dim() == m.dim() && is_isomorphic(s, m, a.seed()).isomorphic) return;
    sources.emplace_back(label, m);
  };
  const Module h = heart(st, nullptr, false).h;
  if (h.dim() > 0) {
    const auto dec = decompose(h, a.seed());
    for (std::size_t i = 0; i < dec.summands.size(); ++i)
      consider(dec.summands.size() == 1 ? "heart" : "summand " + std::to_string(i) + " of the heart",
               dec.summands[i].module);
  }
  for (const auto& [label, m] : induced_from_sylow(a)) {
    const auto dec = decompose(m, a.seed());
    for (std::size_t i = 0; i < dec.summands.size(); ++i)
      consider("summand " + std::to_string(i) + " of " + label, dec.summands[i].module);
  }

  std::vector<GhostCandidate> out;
  for (const auto& [label, m] : sources) {
    const UniversalGhost u = st.universal_ghost(m, lo, hi, quality);
    if (u.cert.stably_nonzero) out.push_back({label, m.dim(), u.cert});
  }
  return out;
}

Verdict gh_verdict(const GroupPtr& g, std::size_t p, const Field& f, const VerdictOptions& opt) {
  require(f.p() == p, "field characteristic differs from p");
  const SylowInfo info = sylow_info(*g, p);
  const auto a = GroupAlgebra::get(g, f, opt.seed);
  const StableCategory st(a);
  Verdict v;
  v.group = g->name();
  v.p = p;
  v.field = f.name();
  v.sylow = describe(info.cls, p);
  v.seed = opt.seed;

  if (std::holds_alternative<OtherClass>(info.cls)) {
    v.predicted = Prediction::OutOfScope;
    v.search_lo = opt.search_lo;
    v.search_hi = opt.search_hi;
    if (opt.search) v.candidates = ghost_search(st, opt.search_lo, opt.search_hi);
    return v;
  }

  const auto cert = st.period();
  ensure(cert.has_value(), "no period found although the cohomology is periodic");
  v.period = cert->d;
  v.swan = swan_period(*g, p);
  ensure(*v.period == *v.swan, "computed period differs from the Swan period");

  const BlockSet blocks = central_primitive_idempotents(*a);
  const BlockIdempotent& b0 = principal_block(blocks);
  if (is_cyclic(info)) {
    v.cr = cr_counts(*a);
    if (opt.enumerate) {
      const Enumeration en = enumerate_indecomposables(st, *cert, b0, opt.seed);
      v.enumerated_total = en.modules.size();
      v.enumerated_per_block = en.principal_count();
      ensure(*v.enumerated_per_block == v.cr->per_block, "principal block count differs from e(p^r - 1)");
      if (blocks.blocks.size() == 1) ensure(*v.enumerated_total == v.cr->total, "count differs from s(p^r - 1)");
    }
  }

  const bool holds = is_cyclic(info) && std::get<CyclicClass>(info.cls).r == 1 && (p == 2 || p == 3);
  v.predicted = holds ? Prediction::Holds : Prediction::Fails;
  v.heart = heart(st, &*cert);

  if (!holds) {
    const HeartData& hd = *v.heart;
    ensure(hd.indecomposable, "heart is not certified indecomposable");
    ensure(!hd.suspension_degree, "heart is a suspension of k");
    ensure(lies_in_block(*a, hd.h, b0), "heart is outside the principal block");
    v.witness = st.universal_ghost(hd.h, *cert);
    ensure(v.witness->cert.ghost && v.witness->cert.quality == GhostQuality::Full, "witness is not a ghost");
    ensure(v.witness->cert.stably_nonzero, "ghost out of the heart is stably trivial");
    return v;
  }

  for (const auto& m : battery(st, *cert, b0, opt.seed, opt.cofibers)) {
    const Module part = m.in_principal_block ? m.module : block_component(*a, m.module, b0).module;
    const SplittingResult r = verify_suspension_splitting(st, part, *cert, b0);
    BatteryReport rep{m.label, part.dim(), r.exponents, r.projective_dim, r.counterexamples.size(), false};
    // identity ghosts in thick(k) are stably trivial
    if (part.dim() > 0) {
      rep.identity_ghost = st.is_ghost(identity_map(part), *cert).ghost;
      ensure(!rep.identity_ghost || a->is_projective(part), "non-projective identity ghost in the battery");
    }
    ensure(r.splits(), "battery module " + m.label + " is not a sum of suspensions of k");
    v.battery.push_back(std::move(rep));
  }

  std::size_t distinct = 0;
  for (int i = 0; i < cert->d; ++i) {
    bool fresh = true;
    for (int j = 0; j < i && fresh; ++j)
      fresh = !is_isomorphic(st.omega_k(i), st.omega_k(j), opt.seed).isomorphic;
    ensure(fresh, "two suspensions of k within one period are isomorphic");
    distinct += fresh ? 1 : 0;
  }
  v.distinct_suspensions = distinct;
  ensure(distinct == v.cr->per_block, "suspensions of k do not exhaust the principal block");

  if (p == 3 && info.phi == 2) {
    const Module& pk = a->pims()[0];
    const Matrix r1 = radical_power(*a, pk, 1);
    const Matrix r2 = radical_power(*a, pk, 2);
    const Module w = sub_quotient(pk, r1, r2).module;
    CaseTwoCheck c;
    c.w_dim = w.dim();
    c.w_not_trivial = !is_isomorphic(w, a->trivial(), opt.seed).isomorphic;
    c.w_squared_trivial = is_isomorphic(tensor(w, w), a->trivial(), opt.seed).isomorphic;
    if (info.normal) ensure(c.w_dim == 1 && c.w_not_trivial && c.w_squared_trivial, "Case 2 structure of W fails");
    v.case_two = c;
  }
  return v;
}

ReductionReport reduction_check(const GroupPtr& g, std::size_t p, const Field& f, std::uint64_t seed) {
  const SylowInfo info = sylow_info(*g, p);
  require(is_cyclic(info), "Sylow subgroup is not cyclic");
  const Subgroup d = sylow(*g, p);
  std::size_t x = 0;
  for (auto m : d.members)
    if (g->element_order(m) == d.order()) x = m;
  const Subgroup c_p = generate_subgroup(*g, {g->pow(x, d.order() / p)});
  const EmbeddedSubgroup n1 = subgroup_as_group(*g, normalizer(*g, c_p), "N_G(C_" + std::to_string(p) + ")");

  auto side = [&](const GroupPtr& grp) {
    const auto a = GroupAlgebra::get(grp, f, seed);
    const auto cert = StableCategory(a).period();
    ensure(cert.has_value(), "no period found although the Sylow subgroup is cyclic");
    const CrCounts c = cr_counts(*a);
    return ReductionSide{grp->name(), grp->order(), cert->d, c.e, c.per_block};
  };
  ReductionReport r{side(g), side(n1.group), false};
  r.equal = r.g.period == r.n.period && r.g.e == r.n.e && r.g.cr_per_block == r.n.cr_per_block;
  return r;
}

}  // namespace stmod
