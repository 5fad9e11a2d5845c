#include "semitop/elements.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace semitop {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) { parent_[x] = parent_[parent_[x]]; x = parent_[x]; }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

u64 parse_nat(const std::string& s, std::size_t& i) {
  skip_ws(s, i);
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
    throw std::invalid_argument("expected a number in '" + s + "' at position " + std::to_string(i));
  u64 v = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    v = v * 10 + static_cast<u64>(s[i] - '0');
    ++i;
  }
  return v;
}

void expect(const std::string& s, std::size_t& i, char c) {
  skip_ws(s, i);
  if (i >= s.size() || s[i] != c)
    throw std::invalid_argument(std::string("expected '") + c + "' in '" + s + "'");
  ++i;
}

std::set<std::pair<u64, u64>> parse_pair_set(const std::string& s) {
  std::set<std::pair<u64, u64>> pairs;
  std::size_t i = 0;
  expect(s, i, '{');
  skip_ws(s, i);
  if (i < s.size() && s[i] == '}') return pairs;
  while (true) {
    expect(s, i, '(');
    u64 a = parse_nat(s, i);
    expect(s, i, ',');
    u64 b = parse_nat(s, i);
    expect(s, i, ')');
    pairs.insert({a, b});
    skip_ws(s, i);
    if (i < s.size() && s[i] == ',') { ++i; continue; }
    break;
  }
  expect(s, i, '}');
  return pairs;
}

}  // namespace

FiniteTransformation FiniteTransformation::identity(std::size_t n) {
  FiniteTransformation f;
  f.degree = n;
  f.images.resize(n);
  std::iota(f.images.begin(), f.images.end(), 0);
  return f;
}

void FiniteTransformation::validate() const {
  if (images.size() != degree) throw std::invalid_argument("transformation: wrong image count");
  for (u64 y : images)
    if (y >= degree) throw std::invalid_argument("transformation: image out of range");
}

FinitePartialMap FinitePartialMap::identity(std::size_t n) {
  FinitePartialMap f;
  f.degree = n;
  f.images.resize(n);
  for (std::size_t x = 0; x < n; ++x) f.images[x] = x;
  return f;
}

void FinitePartialMap::validate() const {
  if (images.size() != degree) throw std::invalid_argument("partial map: wrong image count");
  for (const auto& y : images)
    if (y && *y >= degree) throw std::invalid_argument("partial map: image out of range");
}

FinitePartialBijection FinitePartialBijection::identity(std::size_t n) {
  FinitePartialBijection f;
  f.degree = n;
  for (u64 x = 0; x < n; ++x) f.pairs.push_back({x, x});
  return f;
}

void FinitePartialBijection::normalize() {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  validate();
}

void FinitePartialBijection::validate() const {
  std::set<u64> src, tgt;
  for (const auto& [x, y] : pairs) {
    if (degree && (x >= degree || y >= degree))
      throw std::invalid_argument("partial bijection: point out of range");
    if (!src.insert(x).second) throw std::invalid_argument("partial bijection: repeated source");
    if (!tgt.insert(y).second) throw std::invalid_argument("partial bijection: repeated target");
  }
}

std::optional<u64> FinitePartialBijection::apply(u64 x) const {
  for (const auto& [a, b] : pairs)
    if (a == x) return b;
  return std::nullopt;
}

std::optional<u64> FinitePartialBijection::apply_inv(u64 y) const {
  for (const auto& [a, b] : pairs)
    if (b == y) return a;
  return std::nullopt;
}

FiniteBinaryRelation FiniteBinaryRelation::identity(std::size_t n) {
  FiniteBinaryRelation f;
  f.degree = n;
  for (u64 x = 0; x < n; ++x) f.pairs.insert({x, x});
  return f;
}

FiniteTransformation compose(const FiniteTransformation& f, const FiniteTransformation& g) {
  if (f.degree != g.degree) throw std::invalid_argument("compose: degree mismatch");
  FiniteTransformation h;
  h.degree = f.degree;
  h.images.resize(h.degree);
  for (std::size_t x = 0; x < h.degree; ++x) h.images[x] = g.images[f.images[x]];
  return h;
}

FinitePartialMap compose(const FinitePartialMap& f, const FinitePartialMap& g) {
  if (f.degree != g.degree) throw std::invalid_argument("compose: degree mismatch");
  FinitePartialMap h;
  h.degree = f.degree;
  h.images.resize(h.degree);
  for (std::size_t x = 0; x < h.degree; ++x)
    h.images[x] = f.images[x] ? g.images[*f.images[x]] : std::nullopt;
  return h;
}

FinitePartialBijection compose(const FinitePartialBijection& f, const FinitePartialBijection& g) {
  FinitePartialBijection h;
  h.degree = std::max(f.degree, g.degree);
  for (const auto& [x, y] : f.pairs)
    if (auto z = g.apply(y)) h.pairs.push_back({x, *z});
  h.normalize();
  return h;
}

FiniteBinaryRelation compose(const FiniteBinaryRelation& f, const FiniteBinaryRelation& g) {
  FiniteBinaryRelation h;
  h.degree = std::max(f.degree, g.degree);
  for (const auto& [x, y] : f.pairs)
    for (const auto& [u, v] : g.pairs)
      if (y == u) h.pairs.insert({x, v});
  return h;
}

FinitePartialBijection invert(const FinitePartialBijection& f) {
  FinitePartialBijection h;
  h.degree = f.degree;
  for (const auto& [x, y] : f.pairs) h.pairs.push_back({y, x});
  h.normalize();
  return h;
}

FiniteBinaryRelation invert(const FiniteBinaryRelation& f) {
  FiniteBinaryRelation h;
  h.degree = f.degree;
  for (const auto& [x, y] : f.pairs) h.pairs.insert({y, x});
  return h;
}

Bipartition Bipartition::identity(std::size_t n) {
  Bipartition b;
  b.degree = n;
  b.block.resize(2 * n);
  for (std::size_t x = 0; x < n; ++x) b.block[x] = b.block[n + x] = x;
  return b;
}

void Bipartition::normalize() {
  std::map<u64, u64> rename;
  for (auto& id : block) {
    auto [it, fresh] = rename.insert({id, rename.size()});
    (void)fresh;
    id = it->second;
  }
}

void Bipartition::validate() const {
  if (block.size() != 2 * degree) throw std::invalid_argument("bipartition: wrong point count");
  u64 next = 0;
  std::set<u64> seen;
  for (u64 id : block)
    if (seen.insert(id).second) {
      if (id != next) throw std::invalid_argument("bipartition: block ids not normalized");
      ++next;
    }
}

std::size_t Bipartition::block_count() const {
  u64 m = 0;
  for (u64 id : block) m = std::max(m, id + 1);
  return block.empty() ? 0 : static_cast<std::size_t>(m);
}

std::vector<std::vector<std::size_t>> Bipartition::blocks() const {
  std::vector<std::vector<std::size_t>> out(block_count());
  for (std::size_t i = 0; i < block.size(); ++i) out[block[i]].push_back(i);
  return out;
}

BipartitionProduct bipartition_product(const Bipartition& s, const Bipartition& t) {
  if (s.degree != t.degree) throw std::invalid_argument("bipartition product: degree mismatch");
  const std::size_t n = s.degree;

  // Three-layer diagram on points (x, level), level in {0,1,2}; index = x + level*n.
  // s joins levels 0/1 as given; t joins levels 1/2 after shifting down.
  UnionFind uf(3 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = i + 1; j < 2 * n; ++j) {
      if (s.block[i] == s.block[j]) uf.unite(i, j);
      if (t.block[i] == t.block[j]) uf.unite(i + n, j + n);
    }

  // Adjacency for certificate paths: one edge per pair joined by a single
  // factor block.
  std::vector<std::vector<std::size_t>> adj(3 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = i + 1; j < 2 * n; ++j) {
      if (s.block[i] == s.block[j]) { adj[i].push_back(j); adj[j].push_back(i); }
      if (t.block[i] == t.block[j]) { adj[i + n].push_back(j + n); adj[j + n].push_back(i + n); }
    }

  Bipartition prod;
  prod.degree = n;
  prod.block.resize(2 * n);
  // Product point (x, top) is diagram level 0; (x, bottom) is level 2.
  auto diagram_index = [n](std::size_t product_point) {
    return product_point < n ? product_point : product_point + n;
  };
  for (std::size_t p = 0; p < 2 * n; ++p) prod.block[p] = uf.find(diagram_index(p));
  prod.normalize();

  BipartitionProduct out;
  out.product = prod;

  auto to_point = [n](std::size_t idx) {
    return DiagramPoint{idx % n, static_cast<int>(idx / n)};
  };
  for (std::size_t p = 0; p < 2 * n; ++p)
    for (std::size_t q = p + 1; q < 2 * n; ++q) {
      if (prod.block[p] != prod.block[q]) continue;
      // BFS from p's diagram point to q's.
      std::size_t src = diagram_index(p), dst = diagram_index(q);
      std::vector<int> prev(3 * n, -1);
      std::deque<std::size_t> queue{src};
      prev[src] = static_cast<int>(src);
      while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        if (cur == dst) break;
        for (std::size_t nb : adj[cur])
          if (prev[nb] < 0) { prev[nb] = static_cast<int>(cur); queue.push_back(nb); }
      }
      if (prev[dst] < 0) throw std::logic_error("bipartition product: certificate path missing");
      std::vector<DiagramPoint> chain;
      for (std::size_t cur = dst;; cur = static_cast<std::size_t>(prev[cur])) {
        chain.push_back(to_point(cur));
        if (cur == src) break;
      }
      std::reverse(chain.begin(), chain.end());
      out.certificates.push_back({p, q, std::move(chain)});
    }
  return out;
}

bool certificate_valid(const Bipartition& s, const Bipartition& t, const PathCertificate& cert) {
  const std::size_t n = s.degree;
  if (t.degree != n || cert.chain.empty()) return false;

  auto diagram_index = [n](std::size_t product_point) {
    return product_point < n ? product_point : product_point + n;
  };
  auto idx = [n](const DiagramPoint& p) { return p.x + static_cast<std::size_t>(p.level) * n; };

  for (const DiagramPoint& p : cert.chain)
    if (p.x >= n || p.level < 0 || p.level > 2) return false;
  if (idx(cert.chain.front()) != diagram_index(cert.from)) return false;
  if (idx(cert.chain.back()) != diagram_index(cert.to)) return false;

  for (std::size_t i = 0; i + 1 < cert.chain.size(); ++i) {
    const DiagramPoint &a = cert.chain[i], &b = cert.chain[i + 1];
    bool s_step = a.level <= 1 && b.level <= 1 &&
                  s.block[a.x + static_cast<std::size_t>(a.level) * n] ==
                      s.block[b.x + static_cast<std::size_t>(b.level) * n];
    bool t_step = a.level >= 1 && b.level >= 1 &&
                  t.block[a.x + static_cast<std::size_t>(a.level - 1) * n] ==
                      t.block[b.x + static_cast<std::size_t>(b.level - 1) * n];
    if (!s_step && !t_step) return false;
  }
  return true;
}

FiniteTransformation parse_transformation(const std::string& s) {
  FiniteTransformation f;
  std::size_t i = 0;
  expect(s, i, '[');
  skip_ws(s, i);
  if (i < s.size() && s[i] != ']') {
    while (true) {
      f.images.push_back(parse_nat(s, i));
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') { ++i; continue; }
      break;
    }
  }
  expect(s, i, ']');
  f.degree = f.images.size();
  f.validate();
  return f;
}

FinitePartialMap parse_partial_map(const std::string& s) {
  FinitePartialMap f;
  std::size_t i = 0;
  expect(s, i, '[');
  skip_ws(s, i);
  if (i < s.size() && s[i] != ']') {
    while (true) {
      skip_ws(s, i);
      if (i < s.size() && s[i] == '-') {
        f.images.push_back(std::nullopt);
        ++i;
      } else {
        f.images.push_back(parse_nat(s, i));
      }
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') { ++i; continue; }
      break;
    }
  }
  expect(s, i, ']');
  f.degree = f.images.size();
  f.validate();
  return f;
}

FiniteBinaryRelation parse_relation(const std::string& s, std::size_t degree) {
  FiniteBinaryRelation f;
  f.pairs = parse_pair_set(s);
  u64 m = 0;
  for (const auto& [a, b] : f.pairs) m = std::max({m, a + 1, b + 1});
  f.degree = std::max<std::size_t>(degree, static_cast<std::size_t>(m));
  return f;
}

FinitePartialBijection parse_partial_bijection(const std::string& s, std::size_t degree) {
  FinitePartialBijection f;
  for (const auto& p : parse_pair_set(s)) f.pairs.push_back(p);
  u64 m = 0;
  for (const auto& [a, b] : f.pairs) m = std::max({m, a + 1, b + 1});
  f.degree = std::max<std::size_t>(degree, static_cast<std::size_t>(m));
  f.normalize();
  return f;
}

Bipartition parse_bipartition(const std::string& s) {
  // [[0,1,1'],[0']]: lists of points; x' is the bottom copy of x.
  std::size_t i = 0;
  std::vector<std::vector<std::pair<u64, bool>>> blocks;  // (x, primed)
  expect(s, i, '[');
  skip_ws(s, i);
  while (i < s.size() && s[i] == '[') {
    ++i;
    std::vector<std::pair<u64, bool>> blk;
    skip_ws(s, i);
    if (i < s.size() && s[i] != ']') {
      while (true) {
        u64 x = parse_nat(s, i);
        bool primed = false;
        if (i < s.size() && s[i] == '\'') { primed = true; ++i; }
        blk.push_back({x, primed});
        skip_ws(s, i);
        if (i < s.size() && s[i] == ',') { ++i; continue; }
        break;
      }
    }
    expect(s, i, ']');
    blocks.push_back(std::move(blk));
    skip_ws(s, i);
    if (i < s.size() && s[i] == ',') { ++i; skip_ws(s, i); }
  }
  expect(s, i, ']');

  u64 n = 0;
  for (const auto& blk : blocks)
    for (const auto& [x, primed] : blk) n = std::max(n, x + 1);

  Bipartition b;
  b.degree = static_cast<std::size_t>(n);
  b.block.assign(2 * b.degree, static_cast<u64>(-1));
  for (std::size_t id = 0; id < blocks.size(); ++id)
    for (const auto& [x, primed] : blocks[id]) {
      std::size_t idx = static_cast<std::size_t>(x) + (primed ? b.degree : 0);
      if (b.block[idx] != static_cast<u64>(-1))
        throw std::invalid_argument("bipartition: point listed twice");
      b.block[idx] = id;
    }
  for (u64 id : b.block)
    if (id == static_cast<u64>(-1)) throw std::invalid_argument("bipartition: missing point");
  b.normalize();
  return b;
}

std::string print_transformation(const FiniteTransformation& f) {
  std::ostringstream os;
  os << '[';
  for (std::size_t x = 0; x < f.degree; ++x) {
    if (x) os << ',';
    os << f.images[x];
  }
  os << ']';
  return os.str();
}

std::string print_partial_map(const FinitePartialMap& f) {
  std::ostringstream os;
  os << '[';
  for (std::size_t x = 0; x < f.degree; ++x) {
    if (x) os << ',';
    if (f.images[x]) os << *f.images[x];
    else os << '-';
  }
  os << ']';
  return os.str();
}

std::string print_relation(const FiniteBinaryRelation& f) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [a, b] : f.pairs) {
    if (!first) os << ',';
    first = false;
    os << '(' << a << ',' << b << ')';
  }
  os << '}';
  return os.str();
}

std::string print_partial_bijection(const FinitePartialBijection& f) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [a, b] : f.pairs) {
    if (!first) os << ',';
    first = false;
    os << '(' << a << ',' << b << ')';
  }
  os << '}';
  return os.str();
}

std::string print_bipartition(const Bipartition& b) {
  auto blks = b.blocks();
  std::ostringstream os;
  os << '[';
  for (std::size_t id = 0; id < blks.size(); ++id) {
    if (id) os << ',';
    os << '[';
    for (std::size_t k = 0; k < blks[id].size(); ++k) {
      if (k) os << ',';
      std::size_t idx = blks[id][k];
      if (idx < b.degree) os << idx;
      else os << (idx - b.degree) << '\'';
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace semitop
