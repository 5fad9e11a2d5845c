#include "semitop/clones.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace semitop {
namespace {

u64 checked_pow(u64 base, u64 exp, u64 cap) {
  u64 r = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (r > cap / std::max<u64>(base, 1)) throw std::invalid_argument("cap overflow: table size");
    r *= base;
  }
  return r;
}

std::vector<u64> decode_tuple(u64 idx, u64 q, u64 arity) {
  std::vector<u64> xs(static_cast<std::size_t>(arity));
  for (u64 i = 0; i < arity; ++i) {
    xs[static_cast<std::size_t>(i)] = idx % q;
    idx /= q;
  }
  return xs;
}

void check_composable(const std::vector<FiniteOperation>& fs, const FiniteOperation& g) {
  if (fs.size() != g.arity)
    throw std::invalid_argument("arity mismatch: " + std::to_string(fs.size()) +
                                " inner operations for an outer arity of " +
                                std::to_string(g.arity));
  for (const auto& f : fs) {
    if (f.q != g.q) throw std::invalid_argument("arity mismatch: operations live on different sets");
    if (f.arity != fs.front().arity)
      throw std::invalid_argument("arity mismatch: inner operations have unequal arities");
  }
}

// Odometer over tuples of indices below `limit`, width `width`.
bool next_tuple(std::vector<u64>& t, u64 limit) {
  for (auto& x : t) {
    if (++x < limit) return true;
    x = 0;
  }
  return false;
}

std::vector<u64> sorted_coords(const std::set<u64>& iset, u64 arity) {
  if (iset.empty()) throw std::invalid_argument("kernel set must be nonempty");
  std::vector<u64> coords;
  for (u64 i : iset) {
    if (i == 0 || i > arity)
      throw std::invalid_argument("kernel set coordinate " + std::to_string(i) +
                                  " outside 1.." + std::to_string(arity));
    coords.push_back(i - 1);
  }
  return coords;
}

std::string iset_str(const std::set<u64>& s) {
  std::string out;
  for (u64 i : s) out += (out.empty() ? "" : ",") + std::to_string(i);
  return out;
}

const HornMetadata& need_meta(const WindowOperation& op, const char* who) {
  if (!op.meta || op.meta->iset.empty())
    throw std::invalid_argument(std::string(who) + ": operation '" + op.label +
                                "' carries no kernel set");
  return *op.meta;
}

}  // namespace

u64 FiniteOperation::eval(const std::vector<u64>& xs) const {
  if (xs.size() != arity) throw std::invalid_argument("arity mismatch in evaluation");
  u64 idx = 0, mul = 1;
  for (u64 x : xs) {
    if (x >= q) throw std::invalid_argument("argument outside the base set");
    idx += x * mul;
    mul *= q;
  }
  return table[static_cast<std::size_t>(idx)];
}

bool FiniteOperation::operator<(const FiniteOperation& o) const {
  return std::tie(q, arity, table) < std::tie(o.q, o.arity, o.table);
}

std::string FiniteOperation::str() const {
  std::string out = "op(q=" + std::to_string(q) + ",n=" + std::to_string(arity) + ";";
  for (std::size_t i = 0; i < table.size(); ++i) out += (i ? "," : "") + std::to_string(table[i]);
  return out + ")";
}

FiniteOperation finite_projection(u64 q, u64 arity, u64 coord) {
  if (coord >= arity) throw std::invalid_argument("projection coordinate outside the arity");
  FiniteOperation f{q, arity, {}};
  u64 size = checked_pow(q, arity, u64{1} << 20);
  f.table.resize(static_cast<std::size_t>(size));
  for (u64 idx = 0; idx < size; ++idx)
    f.table[static_cast<std::size_t>(idx)] = decode_tuple(idx, q, arity)[static_cast<std::size_t>(coord)];
  return f;
}

FiniteOperation finite_op_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FiniteOperation f;
  f.q = j.at("q").get<u64>();
  f.arity = j.at("arity").get<u64>();
  f.table = j.at("table").get<std::vector<u64>>();
  if (f.arity == 0) throw std::invalid_argument("nullary operations are not supported");
  if (f.table.size() != checked_pow(f.q, f.arity, u64{1} << 20))
    throw std::invalid_argument("table size does not match q^arity");
  for (u64 v : f.table)
    if (v >= f.q) throw std::invalid_argument("table value outside the base set");
  return f;
}

std::string finite_op_to_json(const FiniteOperation& f) {
  nlohmann::json j;
  j["q"] = f.q;
  j["arity"] = f.arity;
  j["table"] = f.table;
  return j.dump();
}

FiniteOperation clone_compose(const std::vector<FiniteOperation>& fs, const FiniteOperation& g) {
  check_composable(fs, g);
  u64 q = g.q, n = fs.front().arity;
  FiniteOperation h{q, n, {}};
  u64 size = checked_pow(q, n, u64{1} << 20);
  h.table.resize(static_cast<std::size_t>(size));
  std::vector<u64> ys(fs.size());
  for (u64 idx = 0; idx < size; ++idx) {
    auto xs = decode_tuple(idx, q, n);
    for (std::size_t i = 0; i < fs.size(); ++i) ys[i] = fs[i].eval(xs);
    h.table[static_cast<std::size_t>(idx)] = g.eval(ys);
  }
  return h;
}

FiniteOperation star(const FiniteOperation& f, const FiniteOperation& g) {
  if (f.q != g.q) throw std::invalid_argument("arity mismatch: operations live on different sets");
  FiniteOperation h{f.q, f.arity, {}};
  h.table.resize(f.table.size());
  for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
    std::vector<u64> ys(static_cast<std::size_t>(g.arity), f.table[idx]);
    h.table[idx] = g.eval(ys);
  }
  return h;
}

std::vector<FiniteOperation> clone_generate(const std::vector<FiniteOperation>& gens,
                                            u64 arity_cap, u64 q, u64 op_cap) {
  std::set<FiniteOperation> S;
  for (u64 n = 1; n <= arity_cap; ++n)
    for (u64 i = 0; i < n; ++i) S.insert(finite_projection(q, n, i));
  for (const auto& g : gens) {
    if (g.q != q) throw std::invalid_argument("generator base set differs from q");
    if (g.arity == 0 || g.arity > arity_cap)
      throw std::invalid_argument("cap overflow: generator arity outside 1.." +
                                  std::to_string(arity_cap));
    S.insert(g);
  }

  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<FiniteOperation> snapshot(S.begin(), S.end());
    std::map<u64, std::vector<const FiniteOperation*>> by_arity;
    for (const auto& f : snapshot) by_arity[f.arity].push_back(&f);
    for (const auto& g : snapshot) {
      for (const auto& [n, slice] : by_arity) {
        (void)n;
        std::vector<u64> pick(static_cast<std::size_t>(g.arity), 0);
        do {
          std::vector<FiniteOperation> fs;
          fs.reserve(pick.size());
          for (u64 p : pick) fs.push_back(*slice[static_cast<std::size_t>(p)]);
          if (S.insert(clone_compose(fs, g)).second) {
            grew = true;
            if (S.size() > op_cap) throw std::invalid_argument("cap overflow: generated clone too big");
          }
        } while (next_tuple(pick, slice.size()));
      }
    }
  }
  return {S.begin(), S.end()};
}

WindowOperation horn_op(u64 arity, const std::set<u64>& iset, const Cardinal& coimage) {
  auto coords = sorted_coords(iset, arity);
  WindowOperation op;
  op.arity = arity;
  op.eval = [coords, coimage](const std::vector<u64>& xs) {
    std::vector<u64> picked;
    picked.reserve(coords.size());
    for (u64 c : coords) picked.push_back(xs.at(static_cast<std::size_t>(c)));
    u64 v = pair_vec(picked);
    return coimage.infinite ? 2 * v : v + coimage.count;
  };
  op.meta = HornMetadata{iset, coimage, iset.size() == arity};
  op.label = "hop(" + std::to_string(arity) + ";I=" + iset_str(iset) + ";coim=" + coimage.str() + ")";
  return op;
}

WindowOperation parse_window_op(const std::string& dsl) {
  std::string s;
  for (char c : dsl)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto fail = [&dsl]() -> WindowOperation {
    throw std::invalid_argument("window op dsl: cannot parse '" + dsl +
                                "'; expected hop(N;I=a,b;coim=K) or proj(N,i)");
  };
  if (s.rfind("proj(", 0) == 0 && s.back() == ')') {
    auto body = s.substr(5, s.size() - 6);
    auto comma = body.find(',');
    if (comma == std::string::npos) return fail();
    u64 n = std::stoull(body.substr(0, comma));
    u64 i = std::stoull(body.substr(comma + 1));
    return horn_op(n, {i}, Cardinal::fin(0));
  }
  if (s.rfind("hop(", 0) == 0 && s.back() == ')') {
    auto body = s.substr(4, s.size() - 5);
    u64 n = 0;
    std::set<u64> iset;
    Cardinal coim = Cardinal::fin(0);
    std::size_t pos = 0;
    int field = 0;
    while (pos <= body.size()) {
      auto semi = body.find(';', pos);
      std::string part = body.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
      if (field == 0) {
        n = std::stoull(part);
      } else if (part.rfind("I=", 0) == 0) {
        std::size_t p = 2;
        while (p < part.size()) {
          auto c = part.find(',', p);
          iset.insert(std::stoull(part.substr(p, c == std::string::npos ? std::string::npos : c - p)));
          if (c == std::string::npos) break;
          p = c + 1;
        }
      } else if (part.rfind("coim=", 0) == 0) {
        coim = Cardinal::parse(part.substr(5));
      } else {
        return fail();
      }
      ++field;
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
    return horn_op(n, iset, coim);
  }
  return fail();
}

WindowOperation horn_compose(const std::vector<WindowOperation>& fs, const WindowOperation& g) {
  const HornMetadata& mg = need_meta(g, "horn_compose");
  if (fs.size() != g.arity)
    throw std::invalid_argument("arity mismatch: " + std::to_string(fs.size()) +
                                " inner operations for an outer arity of " +
                                std::to_string(g.arity));
  u64 n = fs.front().arity;
  for (const auto& f : fs) {
    need_meta(f, "horn_compose");
    if (f.arity != n) throw std::invalid_argument("arity mismatch: inner operations have unequal arities");
  }

  WindowOperation h;
  h.arity = n;
  std::vector<WindowOperation> inner = fs;
  WindowOperation outer = g;
  h.eval = [inner, outer](const std::vector<u64>& xs) {
    std::vector<u64> ys;
    ys.reserve(inner.size());
    for (const auto& f : inner) ys.push_back(f.eval(xs));
    return outer.eval(ys);
  };
  h.label = "(..)o" + g.label;

  HornMetadata meta;
  for (u64 i : mg.iset)
    for (u64 c : need_meta(fs[static_cast<std::size_t>(i - 1)], "horn_compose").iset)
      meta.iset.insert(c);

  auto coim_of = [](const WindowOperation& op) { return op.meta->coimage; };
  auto essential = [&](u64 i) -> const WindowOperation& { return fs[static_cast<std::size_t>(i - 1)]; };

  if (mg.iset.size() == 1) {
    u64 i = *mg.iset.begin();
    auto cg = coim_of(g), cf = coim_of(essential(i));
    if (!cg || !cf)
      throw std::invalid_argument(
          "missing metadata for the governing case: single essential argument needs both co-image tags");
    meta.coimage = *cg + *cf;
  } else {
    bool overlap = false;
    for (auto it = mg.iset.begin(); it != mg.iset.end() && !overlap; ++it)
      for (auto jt = std::next(it); jt != mg.iset.end() && !overlap; ++jt) {
        const auto& a = essential(*it).meta->iset;
        const auto& b = essential(*jt).meta->iset;
        overlap = std::any_of(a.begin(), a.end(), [&b](u64 x) { return b.count(x) > 0; });
      }
    if (overlap) {
      meta.coimage = Cardinal::aleph0();
    } else {
      bool some_nonsurjective = false, all_known_surjective = true;
      for (u64 i : mg.iset) {
        auto c = coim_of(essential(i));
        if (!c)
          all_known_surjective = false;
        else if (!(*c == Cardinal::fin(0)))
          some_nonsurjective = true;
      }
      if (some_nonsurjective) {
        meta.coimage = Cardinal::aleph0();
      } else if (all_known_surjective) {
        auto cg = coim_of(g);
        if (!cg)
          throw std::invalid_argument(
              "missing metadata for the governing case: disjoint surjective arguments need the outer co-image tag");
        meta.coimage = *cg;
      } else {
        throw std::invalid_argument(
            "missing metadata for the governing case: surjectivity of an essential argument is unknown");
      }
    }
  }
  h.meta = std::move(meta);
  return h;
}

std::optional<std::set<u64>> detect_I(const WindowOperation& op, u64 bound) {
  u64 n = op.arity;
  if (bound < 2) throw std::invalid_argument("detect_I needs a grid bound of at least 2");
  u64 grid = checked_pow(bound, n, u64{1} << 22);
  std::vector<u64> values(static_cast<std::size_t>(grid));
  std::vector<u64> xs(static_cast<std::size_t>(n), 0);
  for (u64 idx = 0; idx < grid; ++idx) {
    try {
      values[static_cast<std::size_t>(idx)] = op.eval(xs);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("bound violation detected: ") + e.what());
    }
    next_tuple(xs, bound);
  }

  std::vector<std::vector<u64>> by_size(static_cast<std::size_t>(n + 1));
  for (u64 mask = 1; mask < (u64{1} << n); ++mask)
    by_size[static_cast<std::size_t>(__builtin_popcountll(mask))].push_back(mask);
  for (u64 size = 1; size <= n; ++size)
    for (u64 mask : by_size[static_cast<std::size_t>(size)]) {
      std::map<u64, u64> key_value;  // projected key -> common value
      std::map<u64, u64> value_key;
      bool good = true;
      std::fill(xs.begin(), xs.end(), 0);
      for (u64 idx = 0; idx < grid && good; ++idx) {
        u64 key = 0, mul = 1;
        for (u64 i = 0; i < n; ++i) {
          if (mask & (u64{1} << i)) {
            key += xs[static_cast<std::size_t>(i)] * mul;
            mul *= bound;
          }
        }
        u64 v = values[static_cast<std::size_t>(idx)];
        auto [it, fresh] = key_value.emplace(key, v);
        if (!fresh && it->second != v) good = false;
        if (fresh) {
          auto [jt, vfresh] = value_key.emplace(v, key);
          if (!vfresh && jt->second != key) good = false;
        }
        next_tuple(xs, bound);
      }
      if (good) {
        std::set<u64> iset;
        for (u64 i = 0; i < n; ++i)
          if (mask & (u64{1} << i)) iset.insert(i + 1);
        return iset;
      }
    }
  return std::nullopt;
}

bool in_W(const WindowOperation& op, const std::set<u64>& iset, u64 bound) {
  auto found = detect_I(op, bound);
  return found && *found == iset;
}

bool in_P(const WindowOperation& op, const std::vector<std::pair<u64, u64>>& pinned_coords,
          u64 y, u64 bound) {
  u64 n = op.arity;
  for (const auto& [coord, val] : pinned_coords) {
    (void)val;
    if (coord == 0 || coord > n)
      throw std::invalid_argument("pinned coordinate " + std::to_string(coord) + " outside 1.." +
                                  std::to_string(n));
  }
  u64 grid = checked_pow(bound, n, u64{1} << 22);
  std::vector<u64> xs(static_cast<std::size_t>(n), 0);
  for (u64 idx = 0; idx < grid; ++idx) {
    bool matches = !pinned_coords.empty();
    for (const auto& [coord, val] : pinned_coords)
      if (xs[static_cast<std::size_t>(coord - 1)] != val) matches = false;
    bool hits = op.eval(xs) == y;
    if (matches != hits) return false;
    next_tuple(xs, bound);
  }
  return true;
}

u64 window_coimage_count(const WindowOperation& op, u64 window) {
  std::vector<u64> rel;
  if (op.meta && !op.meta->iset.empty())
    rel = sorted_coords(op.meta->iset, op.arity);
  else
    for (u64 i = 0; i < op.arity; ++i) rel.push_back(i);
  checked_pow(window, rel.size(), u64{1} << 22);
  std::set<u64> seen;
  std::vector<u64> xs(static_cast<std::size_t>(op.arity), 0);
  std::vector<u64> t(rel.size(), 0);
  do {
    for (std::size_t i = 0; i < rel.size(); ++i) xs[static_cast<std::size_t>(rel[i])] = t[i];
    u64 v = op.eval(xs);
    if (v < window) seen.insert(v);
  } while (next_tuple(t, window));
  return window - seen.size();
}

std::string clone_report_json(const std::vector<std::string>& fs_dsl, const std::string& g_dsl,
                              u64 bound) {
  std::vector<WindowOperation> fs;
  for (const auto& d : fs_dsl) fs.push_back(parse_window_op(d));
  WindowOperation g = parse_window_op(g_dsl);
  WindowOperation h = horn_compose(fs, g);

  nlohmann::json j;
  j["command"] = "clone-compose";
  j["inner"] = fs_dsl;
  j["outer"] = g_dsl;
  j["bound"] = bound;
  j["iset"] = std::vector<u64>(h.meta->iset.begin(), h.meta->iset.end());
  j["coimage"] = h.meta->coimage ? h.meta->coimage->str() : "unknown";

  auto detected = detect_I(h, bound);
  j["detected_iset"] =
      detected ? nlohmann::json(std::vector<u64>(detected->begin(), detected->end()))
               : nlohmann::json();
  bool iset_ok = detected && *detected == h.meta->iset;
  j["iset_ok"] = iset_ok;
  u64 w = 2 * bound;
  j["window_coimage"] = {{"window", w}, {"missing", window_coimage_count(h, w)}};
  j["ok"] = iset_ok;
  return j.dump(2);
}

}  // namespace semitop
