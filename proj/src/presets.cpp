#include "stmod/presets.hpp"

#include <cctype>
#include <numeric>

#include "stmod/error.hpp"

namespace stmod {

namespace {

Perm cycle_perm(std::size_t degree, const std::vector<std::size_t>& cyc) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = static_cast<std::uint16_t>(cyc[(i + 1) % cyc.size()]);
  return p;
}

Perm rotation(std::size_t n) {
  std::vector<std::size_t> c(n);
  std::iota(c.begin(), c.end(), 0);
  return cycle_perm(n, c);
}

GroupPtr make(const std::vector<Perm>& gens, std::string name) {
  return std::make_shared<Group>(Group::close(gens, kMaxGroupOrder, std::move(name)));
}

}  // namespace

GroupPtr cyclic_group(std::size_t n) {
  require(n >= 1 && n <= kMaxGroupOrder, "cyclic(n) needs 1 <= n <= 5000");
  return make({rotation(n)}, "cyclic(" + std::to_string(n) + ")");
}

GroupPtr dihedral_group(std::size_t n) {
  require(n >= 4 && n % 2 == 0 && n <= kMaxGroupOrder, "dihedral(n) needs an even order n >= 4");
  const std::size_t m = n / 2;
  const std::string name = "dihedral(" + std::to_string(n) + ")";
  if (m == 2) return make({cycle_perm(4, {0, 1}), cycle_perm(4, {2, 3})}, name);
  Perm s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = static_cast<std::uint16_t>((m - i) % m);
  return make({rotation(m), s}, name);
}

GroupPtr quaternion_group(std::size_t n) {
  require(n >= 8 && (n & (n - 1)) == 0 && n <= 4096, "quaternion(n) needs n = 2^k >= 8");
  // elements a^i b^j, index i + j*h with h = n/2; b^2 = a^{h/2}, b a b^-1 = a^-1
  const std::size_t h = n / 2;
  auto idx = [h](std::size_t i, std::size_t j) { return static_cast<std::uint16_t>(i % h + j * h); };
  Perm a(n), b(n);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < h; ++i) {
      // a * a^i b^j = a^{i+1} b^j
      a[idx(i, j)] = idx(i + 1, j);
      // b * a^i b^j = a^{-i} b^{1+j}
      const std::size_t ni = (h - i) % h;
      b[idx(i, j)] = j == 0 ? idx(ni, 1) : idx(ni + h / 2, 0);
    }
  }
  return make({a, b}, "quaternion(" + std::to_string(n) + ")");
}

GroupPtr symmetric_group(std::size_t n) {
  require(n >= 1 && n <= 5, "symmetric(n) needs 1 <= n <= 5");
  const std::string name = "symmetric(" + std::to_string(n) + ")";
  if (n == 1) return make({}, name);
  if (n == 2) return make({cycle_perm(2, {0, 1})}, name);
  return make({cycle_perm(n, {0, 1}), rotation(n)}, name);
}

GroupPtr alternating_group(std::size_t n) {
  require(n >= 3 && n <= 5, "alternating(n) needs 3 <= n <= 5");
  const std::string name = "alternating(" + std::to_string(n) + ")";
  if (n == 3) return make({rotation(3)}, name);
  if (n == 4) return make({cycle_perm(4, {0, 1, 2}), Perm{1, 0, 3, 2}}, name);
  return make({cycle_perm(5, {0, 1, 2}), rotation(5)}, name);
}

GroupPtr sl23_group() {
  // points: nonzero (x, y) in GF(3)^2, index = 3x + y - 1
  auto act = [](int a, int b, int c, int d) {
    Perm p(8);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        if (x == 0 && y == 0) continue;
        const int nx = (a * x + b * y) % 3, ny = (c * x + d * y) % 3;
        p[3 * x + y - 1] = static_cast<std::uint16_t>(3 * nx + ny - 1);
      }
    return p;
  };
  return make({act(1, 1, 0, 1), act(1, 0, 1, 1)}, "sl23()");
}

GroupPtr direct_product(const Group& a, const Group& b) {
  const std::size_t da = a.degree(), db = b.degree();
  std::vector<Perm> gens;
  for (const auto& g : a.generator_perms()) {
    Perm p(da + db);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = 0; i < da; ++i) p[i] = g[i];
    gens.push_back(p);
  }
  for (const auto& g : b.generator_perms()) {
    Perm p(da + db);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = 0; i < db; ++i) p[da + i] = static_cast<std::uint16_t>(da + g[i]);
    gens.push_back(p);
  }
  require(a.order() * b.order() <= kMaxGroupOrder, "direct product exceeds the order limit");
  return make(gens, "product(" + a.name() + "," + b.name() + ")");
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(const std::string& t) : text_(t) {}

  GroupPtr parse() {
    GroupPtr g = spec();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("group spec: " + what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  std::size_t number() {
    skip();
    const std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (v > 1000000) fail("number too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return v;
  }

  GroupPtr spec() {
    skip();
    if (text_.compare(pos_, 5, "perm:") == 0) {
      pos_ += 5;
      std::vector<Perm> gens;
      std::size_t degree = 0;
      std::size_t start = pos_;
      std::vector<std::string> parts;
      while (true) {
        const std::size_t semi = text_.find(';', start);
        parts.push_back(text_.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
      std::size_t offset = pos_;
      for (const auto& part : parts) {
        try {
          gens.push_back(parse_cycles(part));
        } catch (const InvalidArgument& e) {
          pos_ = offset;
          fail(std::string("in generator: ") + e.what());
        }
        degree = std::max(degree, gens.back().size());
        offset += part.size() + 1;
      }
      pos_ = text_.size();
      for (auto& g : gens) {
        while (g.size() < degree) g.push_back(static_cast<std::uint16_t>(g.size()));
      }
      return make(gens, "perm:" + text_.substr(text_.find(':') + 1));
    }
    const std::string name = ident();
    expect('(');
    GroupPtr g;
    try {
      if (name == "product") {
        GroupPtr a = spec();
        expect(',');
        GroupPtr b = spec();
        g = direct_product(*a, *b);
      } else if (name == "sl23") {
        g = sl23_group();
      } else {
        const std::size_t n = number();
        if (name == "cyclic") g = cyclic_group(n);
        else if (name == "dihedral") g = dihedral_group(n);
        else if (name == "quaternion") g = quaternion_group(n);
        else if (name == "symmetric") g = symmetric_group(n);
        else if (name == "alternating") g = alternating_group(n);
        else fail("unknown preset '" + name + "'");
      }
    } catch (const InvalidArgument& e) {
      if (std::string(e.what()).rfind("group spec:", 0) == 0) throw;
      fail(e.what());
    }
    expect(')');
    return g;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupPtr parse_group_spec(const std::string& text) { return SpecParser(text).parse(); }

}  // namespace stmod
