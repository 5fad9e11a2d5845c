#include "semitop/zariski.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace semitop {

namespace {

struct WordContext {
  FiniteSemigroup completion;  // S with an identity (possibly adjoined)
  u64 base_n;                  // |S|; elements of S keep their indices
  std::vector<int> exponents;  // {+1} or {+1, -1}
  std::vector<u64> inverse;    // s^{-1} per S element (inverse mode)
};

WordContext make_context(const FiniteSemigroup& s, ZariskiMode mode) {
  WordContext ctx;
  ctx.completion = s.monoid_completion();
  ctx.base_n = s.n;
  ctx.exponents = {1};
  if (mode == ZariskiMode::Inverse) {
    if (!s.is_inverse())
      throw std::invalid_argument("inverse Zariski mode needs an inversion map");
    ctx.exponents.push_back(-1);
    ctx.inverse = s.inverse;
  }
  return ctx;
}

u64 power(const WordContext& ctx, u64 x, int eps) {
  return eps == 1 ? x : ctx.inverse[static_cast<std::size_t>(x)];
}

}  // namespace

bool word_witness_valid(const FiniteSemigroup& s, const WordFunction& w) {
  if (w.constant) {
    for (u64 v : w.induced)
      if (v != *w.constant) return false;
    return !w.induced.empty();
  }
  if (w.word.empty()) return false;
  bool inverse_needed = false;
  for (const auto& l : w.word) inverse_needed |= l.eps != 1;
  WordContext ctx = make_context(s, inverse_needed ? ZariskiMode::Inverse : ZariskiMode::Semigroup);
  for (u64 x = 0; x < s.n; ++x) {
    u64 acc = ctx.completion.mul(w.word[0].t, power(ctx, x, w.word[0].eps));
    for (std::size_t i = 1; i < w.word.size(); ++i)
      acc = ctx.completion.mul(ctx.completion.mul(acc, w.word[i].t), power(ctx, x, w.word[i].eps));
    if (acc != w.at(x)) return false;
  }
  return true;
}

std::vector<WordFunction> word_functions(const FiniteSemigroup& s, ZariskiMode mode,
                                         WordMode words) {
  WordContext ctx = make_context(s, mode);
  std::map<std::vector<u64>, std::vector<WordLetter>> seen;  // induced map -> shortest witness
  std::deque<std::pair<std::vector<u64>, std::vector<WordLetter>>> queue;

  for (u64 t = 0; t < ctx.completion.n; ++t)
    for (int eps : ctx.exponents) {
      std::vector<u64> map(static_cast<std::size_t>(s.n));
      for (u64 x = 0; x < s.n; ++x)
        map[static_cast<std::size_t>(x)] = ctx.completion.mul(t, power(ctx, x, eps));
      std::vector<WordLetter> word{{t, eps}};
      if (seen.emplace(map, word).second) queue.emplace_back(std::move(map), std::move(word));
    }

  while (!queue.empty()) {
    auto [map, word] = std::move(queue.front());
    queue.pop_front();
    for (u64 t = 0; t < ctx.completion.n; ++t)
      for (int eps : ctx.exponents) {
        std::vector<u64> next(static_cast<std::size_t>(s.n));
        for (u64 x = 0; x < s.n; ++x)
          next[static_cast<std::size_t>(x)] = ctx.completion.mul(
              ctx.completion.mul(map[static_cast<std::size_t>(x)], t), power(ctx, x, eps));
        auto w = word;
        w.push_back({t, eps});
        if (seen.emplace(next, w).second) queue.emplace_back(std::move(next), std::move(w));
      }
  }

  std::vector<WordFunction> out;
  for (auto& [map, word] : seen) out.push_back({map, word, std::nullopt});
  if (words == WordMode::WithConstants) {
    for (u64 u = 0; u < s.n; ++u) {
      WordFunction c;
      c.induced.assign(static_cast<std::size_t>(s.n), u);
      c.constant = u;
      if (!std::count_if(out.begin(), out.end(),
                         [&](const WordFunction& w) { return w.induced == c.induced; }))
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const WordFunction& a, const WordFunction& b) { return a.induced < b.induced; });
  }
  return out;
}

std::vector<std::vector<u64>> word_functions_bruteforce(const FiniteSemigroup& s,
                                                        ZariskiMode mode, WordMode words,
                                                        u64 level_cap) {
  WordContext ctx = make_context(s, mode);
  std::vector<std::pair<u64, int>> letters;
  for (u64 t = 0; t < ctx.completion.n; ++t)
    for (int eps : ctx.exponents) letters.emplace_back(t, eps);

  std::set<std::vector<u64>> all;
  if (words == WordMode::WithConstants)
    for (u64 u = 0; u < s.n; ++u) all.insert(std::vector<u64>(static_cast<std::size_t>(s.n), u));

  // Level-synchronous enumeration: the induced maps of all length-k words,
  // then all length-(k+1) words, until one whole level adds nothing new.
  // Sound because the extension of a word depends only on its induced map.
  std::set<std::vector<u64>> frontier;
  for (auto [t, e] : letters) {
    std::vector<u64> map(static_cast<std::size_t>(s.n));
    for (u64 x = 0; x < s.n; ++x)
      map[static_cast<std::size_t>(x)] = ctx.completion.mul(t, power(ctx, x, e));
    frontier.insert(std::move(map));
  }
  all.insert(frontier.begin(), frontier.end());

  for (u64 k = 2;; ++k) {
    if (k > level_cap)
      throw std::runtime_error("word_functions_bruteforce: no stabilization within cap");
    std::set<std::vector<u64>> next;
    for (const auto& map : frontier)
      for (auto [t, e] : letters) {
        std::vector<u64> ext(static_cast<std::size_t>(s.n));
        for (u64 x = 0; x < s.n; ++x)
          ext[static_cast<std::size_t>(x)] = ctx.completion.mul(
              ctx.completion.mul(map[static_cast<std::size_t>(x)], t), power(ctx, x, e));
        next.insert(std::move(ext));
      }
    bool grew = false;
    for (const auto& m : next)
      if (all.insert(m).second) grew = true;
    frontier = std::move(next);
    if (!grew) break;
  }
  return {all.begin(), all.end()};
}

ElementaryAlgebraicFamily elementary_algebraic(const FiniteSemigroup& s, ZariskiMode mode,
                                               WordMode words) {
  ElementaryAlgebraicFamily fam;
  fam.words = word_functions(s, mode, words);
  std::map<Mask, ElementaryAlgebraicSet> dedup;
  for (std::size_t i = 0; i < fam.words.size(); ++i)
    for (std::size_t j = i; j < fam.words.size(); ++j) {
      Mask m = 0;
      for (u64 x = 0; x < s.n; ++x)
        if (fam.words[i].at(x) == fam.words[j].at(x)) m |= Mask(1) << x;
      dedup.emplace(m, ElementaryAlgebraicSet{m, i, j});
    }
  for (auto& [m, es] : dedup) fam.sets.push_back(es);
  return fam;
}

FiniteTopology zariski_topology(const FiniteSemigroup& s, ZariskiMode mode, WordMode words) {
  auto fam = elementary_algebraic(s, mode, words);
  Mask full = s.n == 0 ? 0 : (Mask(1) << s.n) - 1;
  std::vector<Mask> sub;
  for (const auto& es : fam.sets) sub.push_back(full & ~es.points);
  return generate_topology(sub, s.n);
}

std::vector<std::vector<u64>> semigroup_automorphisms(const FiniteSemigroup& s, bool anti) {
  std::vector<u64> perm(static_cast<std::size_t>(s.n));
  for (u64 i = 0; i < s.n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<u64>> out;
  do {
    bool ok = true;
    for (u64 a = 0; a < s.n && ok; ++a)
      for (u64 b = 0; b < s.n && ok; ++b) {
        u64 lhs = perm[static_cast<std::size_t>(s.mul(a, b))];
        u64 rhs = anti ? s.mul(perm[static_cast<std::size_t>(b)], perm[static_cast<std::size_t>(a)])
                       : s.mul(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
        ok = lhs == rhs;
      }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Mask chain_expected_eq(u64 n, u64 a, u64 b) {
  Mask m = 0;
  for (u64 x = 0; x < n; ++x)
    if (std::max(a, x) == std::max(b, x)) m |= Mask(1) << x;
  return m;
}

Mask chain_expected_level(u64 n, u64 a, u64 b) {
  Mask m = 0;
  for (u64 x = 0; x < n; ++x)
    if (std::max(a, x) == b) m |= Mask(1) << x;
  return m;
}

PointwiseHypothesesReport check_pointwise_hypotheses(Family ambient, u64 x,
                                                     const ComputableElement& a,
                                                     const ComputableElement& b,
                                                     const std::vector<ComputableElement>& cs,
                                                     u64 window, u64 samples, u64 seed) {
  PointwiseHypothesesReport rep;

  rep.cond_point_split = Verdict::yes();
  for (u64 y = 0; y < window; ++y) {
    bool agree = a.eval(y) == b.eval(y);
    if (agree == (y == x)) {
      rep.cond_point_split = Verdict::no();
      rep.detail = "agreement pattern wrong at y=" + std::to_string(y);
      break;
    }
  }

  rep.cond_image = Verdict::yes();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Verdict v = image_member(cs[i], x, window);
    if (v.is_true()) continue;
    rep.cond_image = v;
    if (rep.detail.empty())
      rep.detail = "x in im(c_" + std::to_string(i) + "): " +
                   (v.is_false() ? "false" : v.reason);
    break;
  }

  Rng rng(seed);
  rep.cond_fiber_avoid = Verdict::yes();
  for (u64 si = 0; si < samples && !rep.cond_fiber_avoid.is_false(); ++si) {
    ComputableElement s = sample_element(ambient, rng, 8);
    auto sx = s.eval(x);
    if (!sx) continue;  // x outside dom(s): nothing to check at this sample
    for (u64 y = 0; y < window; ++y) {
      if (y == *sx) continue;
      if (!s.support) {
        rep.cond_fiber_avoid = Verdict::unknown("sampled element has no support");
        break;
      }
      auto fiber = s.support->fiber_elements(y);
      bool found_empty = false;
      bool any_unknown = false;
      for (const auto& c : cs) {
        bool misses_all = true;
        for (u64 w : fiber) {
          Verdict v = image_member(c, w, window);
          if (v.is_unknown()) {
            any_unknown = true;
            misses_all = false;
            break;
          }
          if (v.is_true()) {
            misses_all = false;
            break;
          }
        }
        if (misses_all) {
          found_empty = true;
          break;
        }
      }
      if (!found_empty) {
        rep.cond_fiber_avoid =
            any_unknown ? Verdict::unknown("image membership undecidable on a fiber")
                        : Verdict::no();
        if (rep.detail.empty())
          rep.detail = "no c_i avoids the fiber of y=" + std::to_string(y) + " under sample " +
                       std::to_string(si);
        break;
      }
    }
  }
  return rep;
}

}  // namespace semitop
