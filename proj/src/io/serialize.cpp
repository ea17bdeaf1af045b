#include "stmod/io/serialize.hpp"

#include "stmod/error.hpp"

namespace stmod::io {

namespace {

json cycles_of(const Perm& g) {
  json out = json::array();
  std::vector<bool> seen(g.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (seen[i] || g[i] == i) continue;
    json c = json::array();
    for (std::size_t j = i; !seen[j]; j = g[j]) {
      seen[j] = true;
      c.push_back(j + 1);
    }
    out.push_back(std::move(c));
  }
  return out;
}

json module_summary(const Module& m) { return json{{"dim", m.dim()}}; }

}  // namespace

json to_json(const FieldSpec& f) { return json{{"p", f.p}, {"m", f.m}, {"modulus", f.modulus}}; }

FieldSpec field_spec_from_json(const json& j) {
  FieldSpec f;
  f.p = j.at("p").get<std::uint32_t>();
  f.m = j.at("m").get<std::uint32_t>();
  f.modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
  return f;
}

json to_json(const Matrix& m) {
  json entries = json::array();
  for (auto e : m.data()) entries.push_back(m.field().coeffs(e));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Field& f, const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  require(entries.size() == rows * cols, "matrix entry count does not match its shape");
  std::vector<Elem> data;
  data.reserve(entries.size());
  for (const auto& e : entries) {
    const auto c = e.get<std::vector<std::uint32_t>>();
    require(c.size() == f.m(), "matrix entry has the wrong number of coefficients");
    for (auto x : c) require(x < f.p(), "matrix coefficient out of range");
    data.push_back(f.from_coeffs(c));
  }
  return Matrix(f, rows, cols, std::move(data));
}

json to_json(const Group& g) {
  json gens = json::array();
  for (const auto& s : g.generator_perms()) gens.push_back(cycles_of(s));
  return json{{"name", g.name()}, {"degree", g.degree()}, {"order", g.order()}, {"generators", std::move(gens)}};
}

GroupPtr group_from_json(const json& j) {
  const auto degree = j.at("degree").get<std::size_t>();
  std::vector<Perm> gens;
  for (const auto& cycles : j.at("generators")) {
    Perm p(degree);
    for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint16_t>(i);
    for (const auto& c : cycles) {
      const auto pts = c.get<std::vector<std::size_t>>();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        require(pts[i] >= 1 && pts[i] <= degree, "cycle point out of range");
        p[pts[i] - 1] = static_cast<std::uint16_t>(pts[(i + 1) % pts.size()] - 1);
      }
    }
    gens.push_back(std::move(p));
  }
  auto g = std::make_shared<Group>(Group::close(gens, kMaxGroupOrder, j.value("name", std::string{})));
  if (j.contains("order")) require(g->order() == j.at("order").get<std::size_t>(), "group order mismatch");
  return g;
}

std::string canonical_form(const Group& g) {
  std::string s = std::to_string(g.degree()) + ":";
  for (const auto& p : g.generator_perms()) s += perm_to_cycles(p) + ";";
  return s;
}

json to_json(const Module& m) {
  json gens = json::array();
  for (const auto& a : m.gens()) gens.push_back(to_json(a));
  return json{{"field", to_json(m.field().spec())},
              {"group_ref", canonical_form(m.group())},
              {"dim", m.dim()},
              {"gen_action", std::move(gens)}};
}

Module module_from_json(const GroupPtr& g, const json& j) {
  require(j.at("group_ref").get<std::string>() == canonical_form(*g), "module belongs to another group");
  const Field f = Field::from_spec(field_spec_from_json(j.at("field")));
  std::vector<Matrix> gens;
  for (const auto& a : j.at("gen_action")) gens.push_back(matrix_from_json(f, a));
  return Module(g, f, j.at("dim").get<std::size_t>(), std::move(gens));
}

json to_json(const Decomposition& d) {
  json summands = json::array();
  for (const auto& [rep, mult] : d.classes) {
    const Summand& s = d.summands[rep];
    summands.push_back({{"module", to_json(s.module)}, {"multiplicity", mult}, {"certified", s.certified}});
  }
  return json{{"summands", std::move(summands)}, {"seed", d.seed}};
}

json to_json(const GroupAlgebra& a, const BlockSet& b) {
  json blocks = json::array();
  for (const auto& e : b.blocks) {
    json idem = json::object();
    for (std::size_t i = 0; i < a.group().order(); ++i)
      if (e.coeffs[i] != 0) idem[std::to_string(i)] = a.field().coeffs(e.coeffs[i]);
    blocks.push_back({{"idempotent", std::move(idem)}, {"augmentation", e.augmentation}, {"simples", e.simples}});
  }
  return json{{"blocks", std::move(blocks)}, {"principal", b.principal}};
}

json to_json(const PeriodCertificate& c) {
  return json{{"d", c.d}, {"dims", c.dims}, {"pn", c.pn}, {"witness", to_json(c.witness)}};
}

json to_json(const GhostCertificate& c) {
  json degrees = json::array();
  for (const auto& d : c.degrees)
    degrees.push_back({{"degree", d.degree}, {"tate_dim", d.tate_dim}, {"vanishes", d.vanishes}});
  json out{{"quality", c.quality == GhostQuality::Full ? "Full" : "FiniteRange"},
           {"lo", c.lo},
           {"hi", c.hi},
           {"degrees", std::move(degrees)},
           {"ghost", c.ghost},
           {"stably_nonzero", c.stably_nonzero},
           {"rank_gap", c.rank_gap}};
  out["failing_degree"] = c.failing_degree ? json(*c.failing_degree) : json(nullptr);
  return out;
}

json to_json(const Triangle& t) {
  return json{{"x", to_json(t.g.source)},
              {"m", to_json(t.g.target)},
              {"c", to_json(t.h.target)},
              {"g", to_json(t.g.mat)},
              {"h", to_json(t.h.mat)}};
}

json to_json(const UniversalGhost& u) {
  return json{{"source", module_summary(u.triangle.g.target)},
              {"x_dim", u.x.dim()},
              {"degree_of_block", u.degree_of_block},
              {"cofiber_dim", u.triangle.h.target.dim()},
              {"cert", to_json(u.cert)},
              {"stably_trivial", u.stably_trivial},
              {"split_epi", u.split_epi}};
}

json to_json(const HeartData& h) {
  json ns = json::array();
  for (const auto& n : h.non_suspension)
    ns.push_back({{"degree", n.degree}, {"omega_dim", n.omega_dim}, {"by_dimension", n.by_dimension}});
  json out{{"dim", h.h.dim()},
           {"pim_dim", h.p.dim()},
           {"pn", h.pn},
           {"residue", h.residue},
           {"indecomposable", h.indecomposable},
           {"summands", h.summands},
           {"non_suspension", std::move(ns)},
           {"sequence_exact", h.sequence_exact},
           {"cofiber_matches", h.cofiber_matches},
           {"module", to_json(h.h)}};
  out["suspension_degree"] = h.suspension_degree ? json(*h.suspension_degree) : json(nullptr);
  return out;
}

json to_json(const BatteryReport& b) {
  return json{{"label", b.label},
              {"dim", b.dim},
              {"exponents", b.exponents},
              {"projective_dim", b.projective_dim},
              {"counterexamples", b.counterexamples},
              {"identity_ghost", b.identity_ghost}};
}

json to_json(const GhostCandidate& c) {
  return json{{"label", c.label}, {"source_dim", c.source_dim}, {"cert", to_json(c.cert)}};
}

json to_json(const Verdict& v) {
  json out{{"group", v.group},
           {"p", v.p},
           {"field", v.field},
           {"sylow", v.sylow},
           {"predicted", to_string(v.predicted)},
           {"seed", v.seed}};
  out["period"] = {{"computed", v.period ? json(*v.period) : json(nullptr)},
                   {"swan", v.swan ? json(*v.swan) : json(nullptr)}};
  if (v.cr) {
    out["cr"] = {{"s", v.cr->s},
                 {"e", v.cr->e},
                 {"total", v.cr->total},
                 {"per_block", v.cr->per_block},
                 {"enumerated_total", v.enumerated_total ? json(*v.enumerated_total) : json(nullptr)},
                 {"enumerated_per_block", v.enumerated_per_block ? json(*v.enumerated_per_block) : json(nullptr)}};
  }
  if (v.heart) {
    json h = to_json(*v.heart);
    h.erase("module");
    out["heart"] = std::move(h);
  }
  if (v.witness) out["witness"] = to_json(*v.witness);
  if (v.predicted == Prediction::Holds) {
    json bat = json::array();
    for (const auto& b : v.battery) bat.push_back(to_json(b));
    out["battery"] = std::move(bat);
    out["distinct_suspensions"] = v.distinct_suspensions ? json(*v.distinct_suspensions) : json(nullptr);
  }
  if (v.case_two) {
    out["case_two"] = {{"w_dim", v.case_two->w_dim},
                       {"w_not_trivial", v.case_two->w_not_trivial},
                       {"w_squared_trivial", v.case_two->w_squared_trivial}};
  }
  if (v.predicted == Prediction::OutOfScope) {
    json cands = json::array();
    for (const auto& c : v.candidates) cands.push_back(to_json(c));
    out["candidates"] = std::move(cands);
    out["search"] = {{"lo", v.search_lo}, {"hi", v.search_hi}};
    out["note"] =
        "Cohomology is not periodic. Candidates are ghosts checked only in the listed degrees; a stably "
        "nonzero finite-range ghost is evidence, not a proof, that the generating hypothesis fails.";
  }
  return out;
}

json to_json(const ReductionReport& r) {
  auto side = [](const ReductionSide& s) {
    return json{{"group", s.group}, {"order", s.order}, {"period", s.period}, {"e", s.e}, {"cr_per_block", s.cr_per_block}};
  };
  return json{{"g", side(r.g)}, {"n", side(r.n)}, {"equal", r.equal}};
}

}  // namespace stmod::io
