#include "stmod/io/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <regex>

#include "CLI11.hpp"
#include "stmod/error.hpp"
#include "stmod/io/cache.hpp"
#include "stmod/presets.hpp"

namespace stmod::io {

namespace {

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string command;
  std::string group;
  std::size_t p = 0;
  unsigned field_degree = 0;  // 0: splitting degree
  std::uint64_t seed = 1;
  std::string range;
  std::string module;
  std::size_t cofibers = 10;
  bool json = false;
  std::string cache_dir;
  bool no_cache = false;
};

struct Context {
  GroupPtr g;
  Field f;
  std::shared_ptr<GroupAlgebra> a;
};

std::pair<int, int> parse_range(const std::string& s, std::pair<int, int> dflt) {
  if (s.empty()) return dflt;
  static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  std::smatch m;
  require(std::regex_match(s, m, re), "range must look like a..b, got '" + s + "'");
  const int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
  require(lo <= hi, "empty range " + s);
  require(hi - lo <= 64, "range wider than 64 degrees");
  return {lo, hi};
}

// k | regular | heart | omega(i) | simple(i) | pim(i) | file:<path>
Module parse_module(const std::string& s, const Context& c, const StableCategory& st) {
  static const std::regex indexed(R"((omega|simple|pim)\((-?\d+)\))");
  std::smatch m;
  if (s == "k") return c.a->trivial();
  if (s == "regular") return c.a->regular();
  if (s == "heart") return heart(st, nullptr, false).h;
  if (s.rfind("file:", 0) == 0) {
    std::ifstream in(s.substr(5));
    require(static_cast<bool>(in), "cannot read module file " + s.substr(5));
    const json j = json::parse(in, nullptr, false);
    require(!j.is_discarded(), "module file is not valid JSON");
    const Module mod = module_from_json(c.g, j);
    require(mod.field() == c.f, "module file is over " + mod.field().name() + ", expected " + c.f.name());
    return mod;
  }
  require(std::regex_match(s, m, indexed), "unknown module '" + s + "'");
  const int i = std::stoi(m[2]);
  if (m[1] == "omega") {
    require(i >= -64 && i <= 64, "syzygy degree out of range");
    return st.omega_k(i);
  }
  require(i >= 0 && static_cast<std::size_t>(i) < c.a->simples().size(), "no simple module with index " + m[2].str());
  return m[1] == "simple" ? c.a->simples()[i] : c.a->pims()[i];
}

std::optional<PeriodCertificate> period_if_periodic(const Context& c, const StableCategory& st) {
  if (!has_periodic_cohomology(*c.g, c.f.p())) return std::nullopt;
  return st.period();
}

// Returns the outputs object and the exit code it implies.
std::pair<json, int> compute(const Options& o, const Context& c) {
  const StableCategory st(c.a);
  const std::size_t p = c.f.p();
  json out;
  int code = kOk;
  const std::string& cmd = o.command;

  if (cmd == "verdict") {
    VerdictOptions vo;
    vo.seed = o.seed;
    vo.cofibers = o.cofibers;
    std::tie(vo.search_lo, vo.search_hi) = parse_range(o.range, {-8, 8});
    const Verdict v = gh_verdict(c.g, p, c.f, vo);
    out = to_json(v);
    if (v.predicted == Prediction::OutOfScope) code = kOutOfScope;
  } else if (cmd == "period") {
    out["periodic"] = has_periodic_cohomology(*c.g, p);
    out["sylow"] = describe(sylow_info(*c.g, p).cls, p);
    if (out["periodic"].get<bool>()) {
      const auto cert = st.period();
      ensure(cert.has_value(), "no period found although the cohomology is periodic");
      out["certificate"] = to_json(*cert);
      out["period"] = cert->d;
      out["swan"] = swan_period(*c.g, p);
    } else {
      out["period"] = nullptr;
      code = kOutOfScope;
    }
  } else if (cmd == "tate") {
    const auto [lo, hi] = parse_range(o.range, {-4, 4});
    const std::string spec = o.module.empty() ? "k" : o.module;
    const Module m = parse_module(spec, c, st);
    json table = json::array();
    for (int i = lo; i <= hi; ++i) table.push_back({{"degree", i}, {"dim", st.tate(m, i).dim()}});
    out = {{"module", spec}, {"module_dim", m.dim()}, {"table", std::move(table)}};
  } else if (cmd == "decompose") {
    const std::string spec = o.module.empty() ? "regular" : o.module;
    const Module m = parse_module(spec, c, st);
    out = to_json(decompose(m, o.seed));
    out["module"] = spec;
    out["module_dim"] = m.dim();
    json proj = json::array();
    for (const auto& s : out["summands"]) proj.push_back(c.a->is_projective(module_from_json(c.g, s["module"])));
    for (std::size_t i = 0; i < proj.size(); ++i) out["summands"][i]["projective"] = proj[i];
  } else if (cmd == "blocks") {
    out = to_json(*c.a, central_primitive_idempotents(*c.a));
    json dims = json::array();
    for (const auto& s : c.a->simples()) dims.push_back(s.dim());
    out["simple_dims"] = std::move(dims);
    out["splitting_degree"] = splitting_degree(static_cast<std::uint32_t>(p), c.g->exponent());
  } else if (cmd == "heart") {
    const auto cert = period_if_periodic(c, st);
    out = to_json(heart(st, cert ? &*cert : nullptr));
    out["period"] = cert ? json(cert->d) : json(nullptr);
  } else if (cmd == "ghost-search") {
    const auto [lo, hi] = parse_range(o.range, {-8, 8});
    json cands = json::array();
    for (const auto& g : ghost_search(st, lo, hi)) cands.push_back(to_json(g));
    out = {{"search", {{"lo", lo}, {"hi", hi}}}, {"candidates", std::move(cands)}};
  } else if (cmd == "battery") {
    const auto cert = period_if_periodic(c, st);
    if (!cert) {
      out = {{"periodic", false}, {"members", json::array()}};
      code = kOutOfScope;
    } else {
      const BlockSet blocks = central_primitive_idempotents(*c.a);
      const BlockIdempotent& b0 = principal_block(blocks);
      json members = json::array();
      std::size_t failures = 0;
      for (const auto& m : battery(st, *cert, b0, o.seed, o.cofibers)) {
        const Module part = m.in_principal_block ? m.module : block_component(*c.a, m.module, b0).module;
        const SplittingResult r = verify_suspension_splitting(st, part, *cert, b0);
        failures += r.counterexamples.size();
        json cx = json::array();
        for (const auto& x : r.counterexamples) cx.push_back(x.dim());
        members.push_back({{"label", m.label},
                           {"dim", m.module.dim()},
                           {"b0_dim", part.dim()},
                           {"exponents", r.exponents},
                           {"projective_dim", r.projective_dim},
                           {"counterexample_dims", std::move(cx)}});
      }
      out = {{"periodic", true}, {"period", cert->d}, {"members", std::move(members)}, {"all_split", failures == 0}};
    }
  } else if (cmd == "reduction-check") {
    if (!std::holds_alternative<CyclicClass>(sylow_info(*c.g, p).cls)) {
      out = {{"sylow", describe(sylow_info(*c.g, p).cls, p)}, {"applicable", false}};
      code = kOutOfScope;
    } else {
      out = to_json(reduction_check(c.g, p, c.f, o.seed));
      out["applicable"] = true;
    }
  }
  return {out, code};
}

void print_human(const std::string& cmd, const json& in, const json& o, std::ostream& out) {
  out << cmd << ": " << in["group"].get<std::string>() << " over " << in["field"]["name"].get<std::string>() << "\n";
  if (cmd == "verdict") {
    out << "  Sylow " << o["sylow"].get<std::string>() << ", predicted " << o["predicted"].get<std::string>() << "\n";
    if (!o["period"]["computed"].is_null())
      out << "  period " << o["period"]["computed"] << " (Swan " << o["period"]["swan"] << ")\n";
    if (o.contains("cr"))
      out << "  Curtis-Reiner: s=" << o["cr"]["s"] << " e=" << o["cr"]["e"] << " total=" << o["cr"]["total"]
          << " principal block=" << o["cr"]["per_block"] << "\n";
    if (o.contains("heart")) out << "  heart dim " << o["heart"]["dim"] << "\n";
    if (o.contains("witness"))
      out << "  witness: universal ghost out of the heart, " << o["witness"]["cert"]["quality"].get<std::string>()
          << ", stably nonzero " << o["witness"]["cert"]["stably_nonzero"] << "\n";
    if (o.contains("battery"))
      out << "  battery: " << o["battery"].size() << " modules, all split into suspensions of k\n";
    if (o.contains("candidates")) {
      out << "  candidate ghosts in degrees " << o["search"]["lo"] << ".." << o["search"]["hi"] << ": "
          << o["candidates"].size() << "\n";
      for (const auto& c : o["candidates"])
        out << "    " << c["label"].get<std::string>() << " (dim " << c["source_dim"] << ")\n";
      out << "  " << o["note"].get<std::string>() << "\n";
    }
  } else if (cmd == "period") {
    if (o["period"].is_null())
      out << "  Sylow " << o["sylow"].get<std::string>() << ": cohomology is not periodic\n";
    else
      out << "  period " << o["period"] << " (Swan " << o["swan"] << "), dims " << o["certificate"]["dims"].dump()
          << "\n";
  } else if (cmd == "tate") {
    for (const auto& r : o["table"]) out << "  H^" << r["degree"] << " = " << r["dim"] << "\n";
  } else if (cmd == "decompose") {
    out << "  " << o["module"].get<std::string>() << " (dim " << o["module_dim"] << ")\n";
    for (const auto& s : o["summands"])
      out << "    dim " << s["module"]["dim"] << " x" << s["multiplicity"]
          << (s["projective"].get<bool>() ? " projective" : "") << "\n";
  } else if (cmd == "blocks") {
    out << "  " << o["blocks"].size() << " block(s), principal " << o["principal"] << ", simple dims "
        << o["simple_dims"].dump() << "\n";
    for (const auto& b : o["blocks"]) out << "    simples " << b["simples"].dump() << "\n";
  } else if (cmd == "heart") {
    out << "  dim " << o["dim"] << ", dim mod " << o["pn"] << " = " << o["residue"] << ", indecomposable "
        << o["indecomposable"] << "\n";
    if (!o["suspension_degree"].is_null()) out << "  stably Omega^" << o["suspension_degree"] << " k\n";
  } else if (cmd == "ghost-search") {
    out << "  " << o["candidates"].size() << " stably nonzero ghosts in degrees " << o["search"]["lo"] << ".."
        << o["search"]["hi"] << "\n";
    for (const auto& c : o["candidates"]) out << "    " << c["label"].get<std::string>() << "\n";
  } else if (cmd == "battery") {
    for (const auto& m : o["members"])
      out << "  " << m["label"].get<std::string>() << ": Omega exponents " << m["exponents"].dump() << "\n";
  } else if (cmd == "reduction-check") {
    if (!o["applicable"].get<bool>()) {
      out << "  Sylow " << o["sylow"].get<std::string>() << " is not cyclic\n";
    } else {
      for (const char* side : {"g", "n"})
        out << "  " << o[side]["group"].get<std::string>() << ": period " << o[side]["period"] << ", e "
            << o[side]["e"] << ", principal block count " << o[side]["cr_per_block"] << "\n";
      out << "  equal: " << o["equal"] << "\n";
    }
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Stable module computations for finite group algebras"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verdict", "decide the generating hypothesis and gather evidence"},
      {"period", "period of the trivial module under the syzygy operator"},
      {"tate", "Tate cohomology dimensions"},
      {"decompose", "Krull-Schmidt decomposition of a module"},
      {"blocks", "blocks of the group algebra"},
      {"heart", "the heart rad P / soc P of the projective cover of k"},
      {"ghost-search", "stably nonzero ghosts over a degree range"},
      {"battery", "splitting test on the principal-block battery"},
      {"reduction-check", "compare G with the normalizer of its order-p subgroup"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&o, n = name] { o.command = n; });
    sub->add_option("--group", o.group, "preset such as symmetric(3), or perm: (1 2 3); (1 2)")->required();
    sub->add_option("--p", o.p, "the characteristic")->required();
    sub->add_option("--field-degree", o.field_degree, "work over GF(p^m); default: the splitting degree");
    sub->add_option("--seed", o.seed, "seed for every randomized step");
    sub->add_option("--range", o.range, "degree range a..b");
    sub->add_option("--module", o.module, "k, regular, heart, omega(i), simple(i), pim(i) or file:<path>");
    sub->add_option("--cofibers", o.cofibers, "random cofibers in the battery");
    sub->add_flag("--json", o.json, "emit a JSON report");
    sub->add_option("--cache-dir", o.cache_dir, "directory for cached results");
    sub->add_flag("--no-cache", o.no_cache, "ignore --cache-dir");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  json inputs;
  try {
    Context c;
    c.g = parse_group_spec(o.group);
    require(is_prime(o.p), "p = " + std::to_string(o.p) + " is not prime");
    require(c.g->order() % o.p == 0, "p = " + std::to_string(o.p) + " does not divide |G| = " +
                                         std::to_string(c.g->order()));
    const auto p32 = static_cast<std::uint32_t>(o.p);
    const std::uint32_t deg = o.field_degree ? o.field_degree : splitting_degree(p32, c.g->exponent());
    c.f = Field::create(p32, deg);
    inputs = {{"group", c.g->name()},
              {"group_def", to_json(*c.g)},
              {"p", o.p},
              {"field", {{"name", c.f.name()}, {"spec", to_json(c.f.spec())}}},
              {"seed", o.seed},
              {"range", o.range.empty() ? json(nullptr) : json(o.range)},
              {"module", o.module.empty() ? json(nullptr) : json(o.module)},
              {"cofibers", o.cofibers}};

    const CacheKey key{canonical_form(*c.g), c.f.spec(), o.command, o.seed,
                       o.range + "|" + o.module + "|" + std::to_string(o.cofibers)};
    const bool use_cache = !o.cache_dir.empty() && !o.no_cache;
    std::optional<json> hit;
    if (use_cache) {
      hit = Cache(o.cache_dir).load(key);
      if (hit && !(hit->is_object() && hit->contains("outputs") && hit->contains("exit_code"))) hit.reset();
    }
    json outputs;
    int code;
    if (hit) {
      outputs = (*hit)["outputs"];
      code = (*hit)["exit_code"].get<int>();
    } else {
      c.a = GroupAlgebra::get(c.g, c.f, o.seed);
      std::tie(outputs, code) = compute(o, c);
      if (use_cache) Cache(o.cache_dir).store(key, {{"outputs", outputs}, {"exit_code", code}});
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.json) {
      json report{{"schema_version", kSchemaVersion},
                  {"version", kVersion},
                  {"command", o.command},
                  {"inputs", inputs},
                  {"outputs", outputs},
                  {"seed", o.seed},
                  {"exit_code", code},
                  {"timings", {{"wall_ms", ms}, {"cache_hit", hit.has_value()}}}};
      out << report.dump(2) << "\n";
    } else {
      print_human(o.command, inputs, outputs, out);
    }
    return code;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Undecided& e) {
    err << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const std::exception& e) {
    json dump{{"error", e.what()},
              {"kind", dynamic_cast<const InvariantViolation*>(&e) ? "invariant violation" : "exception"},
              {"command", o.command},
              {"args", args},
              {"inputs", inputs}};
    err << "internal error, diagnostic dump follows\n" << dump.dump(2) << "\n";
    return kInternal;
  }
}

}  // namespace stmod::io
