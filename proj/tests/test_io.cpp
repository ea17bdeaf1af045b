#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "stmod/error.hpp"
#include "stmod/io/cache.hpp"
#include "stmod/io/cli.hpp"
#include "stmod/presets.hpp"
#include "stmod/rng.hpp"

using namespace stmod;
using namespace stmod::io;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

json without_timings(json j) {
  j.erase("timings");
  return j;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("stmod-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

Module random_module(const GroupPtr& g, const Field& f, std::size_t dim, Rng& rng) {
  // conjugate of a sum of simples and the regular module by a random basis change
  const auto a = GroupAlgebra::get(g, f);
  Module m = a->trivial();
  while (m.dim() < dim) m = direct_sum(m, rng.uniform(2) ? a->regular() : a->simples()[rng.uniform(a->simples().size())]);
  Matrix p(f, m.dim(), m.dim());
  do {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) p(i, j) = static_cast<Elem>(rng.uniform(f.q()));
  } while (rank(p) < p.rows());
  return change_basis(m, p);
}

}  // namespace

TEST_CASE("field, matrix, group and module round trips") {
  Rng rng(3);
  for (auto [g, p, m] : std::vector<std::tuple<GroupPtr, std::uint32_t, std::uint32_t>>{
           {symmetric_group(3), 3, 1}, {cyclic_group(6), 2, 2}, {alternating_group(4), 2, 2},
           {dihedral_group(10), 5, 1}, {quaternion_group(8), 2, 1}, {sl23_group(), 3, 2}}) {
    const Field f = Field::create(p, m);
    CHECK(field_spec_from_json(to_json(f.spec())) == f.spec());
    CHECK(Field::from_spec(field_spec_from_json(to_json(f.spec()))) == f);

    const GroupPtr g2 = group_from_json(to_json(*g));
    CHECK(canonical_form(*g2) == canonical_form(*g));
    CHECK(g2->order() == g->order());
    for (std::size_t i = 0; i < g->order(); ++i) CHECK(g2->element(i) == g->element(i));

    for (int t = 0; t < 3; ++t) {
      const Module mod = random_module(g, f, 2 + rng.uniform(6), rng);
      const json j = to_json(mod);
      const Module back = module_from_json(g, j);
      CHECK(back.dim() == mod.dim());
      for (std::size_t s = 0; s < mod.gens().size(); ++s) CHECK(back.gen(s) == mod.gen(s));
      CHECK(to_json(back) == j);
      CHECK(json::parse(j.dump()) == j);
    }
  }
}

TEST_CASE("malformed inputs are rejected") {
  const Field f = Field::create(3);
  json bad = to_json(Matrix::identity(f, 2));
  bad["entries"][0] = json::array({5});
  CHECK_THROWS_AS(matrix_from_json(f, bad), InvalidArgument);
  bad["entries"] = json::array();
  CHECK_THROWS_AS(matrix_from_json(f, bad), InvalidArgument);

  const Module k = trivial_module(symmetric_group(3), f);
  CHECK_THROWS_AS(module_from_json(cyclic_group(3), to_json(k)), InvalidArgument);
  // an assignment of generator matrices that is not a representation
  json j = to_json(direct_sum(k, k));
  j["gen_action"][0] = to_json(Matrix::from_ints(f, 2, 2, {1, 1, 0, 1}));
  j["gen_action"][1] = to_json(Matrix::from_ints(f, 2, 2, {1, 0, 1, 1}));
  CHECK_THROWS_AS(module_from_json(symmetric_group(3), j), InvalidArgument);
}

TEST_CASE("cache keys, hits, misses and corrupt entries") {
  const fs::path dir = fresh_dir("cache");
  const Cache cache(dir);
  CacheKey key{canonical_form(*cyclic_group(4)), Field::create(2).spec(), "period", 1, ""};
  CHECK(key.digest().size() == 16);
  CHECK_FALSE(cache.load(key));
  REQUIRE(cache.store(key, json{{"d", 2}}));
  REQUIRE(cache.load(key));
  CHECK((*cache.load(key))["d"] == 2);

  CacheKey other = key;
  other.seed = 2;
  CHECK(other.digest() != key.digest());
  CHECK_FALSE(cache.load(other));
  other = key;
  other.field = Field::create(2, 2).spec();
  CHECK_FALSE(cache.load(other));

  std::ofstream(cache.path_of(key)) << "{\"key\": \"trunc";
  CHECK_FALSE(cache.load(key));
  std::ofstream(cache.path_of(key)) << json{{"key", "something else"}, {"payload", 1}}.dump();
  CHECK_FALSE(cache.load(key));
  CHECK(cache.store(key, json{{"d", 2}}));
  CHECK(cache.load(key));

  // no stray temporary files after writes
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".json" ? 1 : 100;
  CHECK(files == 1);

  const Cache unwritable("/proc/stmod-no-such-dir");
  CHECK_FALSE(unwritable.store(key, json{}));
  CHECK_FALSE(unwritable.load(key));
  fs::remove_all(dir);
}

TEST_CASE("command examples") {
  auto s3 = run({"verdict", "--group", "symmetric(3)", "--p", "3", "--json"});
  REQUIRE(s3.code == kOk);
  auto r = s3.report();
  CHECK(r["schema_version"] == kSchemaVersion);
  CHECK(r["outputs"]["predicted"] == "Holds");
  CHECK(r["outputs"]["period"]["computed"] == 4);
  CHECK(r["outputs"]["period"]["swan"] == 4);

  auto c9 = run({"verdict", "--group", "cyclic(9)", "--p", "3", "--json"});
  REQUIRE(c9.code == kOk);
  r = c9.report();
  CHECK(r["outputs"]["predicted"] == "Fails");
  CHECK(r["outputs"]["heart"]["dim"] == 7);
  CHECK(r["outputs"]["witness"]["source"]["dim"] == 7);
  CHECK(r["outputs"]["witness"]["cert"]["quality"] == "Full");
  CHECK(r["outputs"]["witness"]["cert"]["stably_nonzero"] == true);

  auto q8 = run({"period", "--group", "quaternion(8)", "--p", "2", "--json"});
  REQUIRE(q8.code == kOk);
  CHECK(q8.report()["outputs"]["period"] == 4);

  auto human = run({"period", "--group", "quaternion(8)", "--p", "2"});
  CHECK(human.out.find("period 4") != std::string::npos);

  auto tate = run({"tate", "--group", "cyclic(2)", "--p", "2", "--range", "-2..2", "--json"});
  REQUIRE(tate.code == kOk);
  for (const auto& row : tate.report()["outputs"]["table"]) CHECK(row["dim"] == 1);

  auto dec = run({"decompose", "--group", "cyclic(3)", "--p", "3", "--module", "omega(1)", "--json"});
  REQUIRE(dec.code == kOk);
  CHECK(dec.report()["outputs"]["summands"].size() == 1);
  CHECK(dec.report()["outputs"]["summands"][0]["module"]["dim"] == 2);

  auto blocks = run({"blocks", "--group", "cyclic(6)", "--p", "3", "--field-degree", "1", "--json"});
  REQUIRE(blocks.code == kOk);
  CHECK(blocks.report()["outputs"]["blocks"].size() == 2);

  auto red = run({"reduction-check", "--group", "symmetric(3)", "--p", "3", "--json"});
  REQUIRE(red.code == kOk);
  CHECK(red.report()["outputs"]["equal"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run({"period", "--group", "alternating(4)", "--p", "2"}).code == kOutOfScope);
  CHECK(run({"battery", "--group", "dihedral(8)", "--p", "2"}).code == kOutOfScope);
  CHECK(run({"reduction-check", "--group", "quaternion(8)", "--p", "2"}).code == kOutOfScope);
  CHECK(run({"ghost-search", "--group", "cyclic(2)", "--p", "2"}).code == kOk);
  CHECK(run({"verdict", "--p", "3"}).code == kUsage);
  CHECK(run({"frobnicate", "--group", "cyclic(3)", "--p", "3"}).code == kUsage);
  CHECK(run({"verdict", "--group", "cyclic(3)", "--p", "2"}).code == kUsage);
  CHECK(run({"verdict", "--group", "cyclic(3)", "--p", "4"}).code == kUsage);
  CHECK(run({"verdict", "--group", "cyclic(", "--p", "3"}).code == kUsage);
  CHECK(run({"tate", "--group", "cyclic(3)", "--p", "3", "--range", "3..1"}).code == kUsage);
  CHECK(run({"tate", "--group", "cyclic(3)", "--p", "3", "--module", "simple(7)"}).code == kUsage);
  CHECK(run({"--help"}).code == kOk);
}

TEST_CASE("determinism and caching") {
  const std::vector<std::string> base = {"verdict", "--group", "cyclic(4)", "--p", "2", "--json"};
  const auto a = run(base), b = run(base);
  REQUIRE(a.code == kOk);
  CHECK(without_timings(a.report()).dump() == without_timings(b.report()).dump());

  const fs::path dir = fresh_dir("cli");
  auto with = base;
  with.insert(with.end(), {"--cache-dir", dir.string()});
  const auto first = run(with), second = run(with);
  CHECK(first.report()["timings"]["cache_hit"] == false);
  CHECK(second.report()["timings"]["cache_hit"] == true);
  CHECK(without_timings(second.report()) == without_timings(a.report()));
  CHECK(without_timings(first.report()) == without_timings(a.report()));

  auto disabled = with;
  disabled.push_back("--no-cache");
  const auto off = run(disabled);
  CHECK(off.report()["timings"]["cache_hit"] == false);
  CHECK(without_timings(off.report()) == without_timings(a.report()));

  auto reseeded = with;
  reseeded.insert(reseeded.end(), {"--seed", "7"});
  const auto miss = run(reseeded);
  CHECK(miss.report()["timings"]["cache_hit"] == false);
  CHECK(miss.report()["outputs"]["predicted"] == "Fails");

  // a corrupted entry is recomputed, not trusted
  for (const auto& e : fs::directory_iterator(dir)) std::ofstream(e.path()) << "garbage";
  const auto again = run(with);
  CHECK(again.code == kOk);
  CHECK(again.report()["timings"]["cache_hit"] == false);
  CHECK(without_timings(again.report()) == without_timings(a.report()));
  fs::remove_all(dir);
}

TEST_CASE("module files feed back into commands") {
  const fs::path dir = fresh_dir("module");
  fs::create_directories(dir);
  auto h = run({"heart", "--group", "cyclic(4)", "--p", "2", "--json"});
  REQUIRE(h.code == kOk);
  const fs::path file = dir / "heart.json";
  std::ofstream(file) << h.report()["outputs"]["module"].dump();
  auto dec = run({"decompose", "--group", "cyclic(4)", "--p", "2", "--module", "file:" + file.string(), "--json"});
  REQUIRE(dec.code == kOk);
  CHECK(dec.report()["outputs"]["module_dim"] == 2);
  CHECK(dec.report()["outputs"]["summands"].size() == 1);
  fs::remove_all(dir);
}
