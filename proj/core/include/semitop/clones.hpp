#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semitop/cardinal.hpp"
#include "semitop/common.hpp"

namespace semitop {

// An operation on the finite set {0, ..., q-1} given by its full value table.
// Tuples are indexed little-endian: the first argument varies fastest.
struct FiniteOperation {
  u64 q = 2;
  u64 arity = 1;
  std::vector<u64> table;

  u64 eval(const std::vector<u64>& xs) const;
  bool operator==(const FiniteOperation&) const = default;
  bool operator<(const FiniteOperation& o) const;
  std::string str() const;
};

FiniteOperation finite_projection(u64 q, u64 arity, u64 coord);  // coord is 0-based
FiniteOperation finite_op_from_json(const std::string& text);
std::string finite_op_to_json(const FiniteOperation& f);

// (x)((f_1,...,f_m) o g) = ((x)f_1, ..., (x)f_m)g. All f_i share one arity.
FiniteOperation clone_compose(const std::vector<FiniteOperation>& fs, const FiniteOperation& g);

// The star product (x_1...x_n)(f*g) = ((x)f, ..., (x)f)g; for unary f, g this
// is ordinary composition.
FiniteOperation star(const FiniteOperation& f, const FiniteOperation& g);

// Least set containing the generators and all projections with arity up to
// arity_cap, closed under composition within the caps. Output is sorted.
std::vector<FiniteOperation> clone_generate(const std::vector<FiniteOperation>& gens,
                                            u64 arity_cap, u64 q, u64 op_cap = 4096);

// Declared structure of an operation on the naturals whose kernel is a
// product of coordinate equalities: (x)op = (y)op iff x and y agree on every
// coordinate in iset (1-based).
struct HornMetadata {
  std::set<u64> iset;
  std::optional<Cardinal> coimage;
  std::optional<bool> injective;
};

struct WindowOperation {
  u64 arity = 1;
  std::function<u64(const std::vector<u64>&)> eval;
  std::optional<HornMetadata> meta;
  std::string label;
};

// Canonical operation with the given kernel set and co-image: tuples are
// packed through the pairing bijection on the iset coordinates, then shifted
// by `missing` values (or doubled, for an infinite co-image).
WindowOperation horn_op(u64 arity, const std::set<u64>& iset, const Cardinal& coimage);
WindowOperation parse_window_op(const std::string& dsl);

// Composition with metadata propagated by the kernel/co-image case analysis.
WindowOperation horn_compose(const std::vector<WindowOperation>& fs, const WindowOperation& g);

// Brute-force kernel detection on the grid {0..bound-1}^arity: the unique
// nonempty coordinate set whose equalities generate the kernel, or nullopt
// when none fits.
std::optional<std::set<u64>> detect_I(const WindowOperation& op, u64 bound);

// Membership predicates for the named families used alongside the pointwise
// topology: operations with a prescribed kernel set, and operations with a
// prescribed preimage of one point. Exact for operations whose relevant
// behavior lies inside the probed grid.
bool in_W(const WindowOperation& op, const std::set<u64>& iset, u64 bound);
bool in_P(const WindowOperation& op, const std::vector<std::pair<u64, u64>>& pinned_coords,
          u64 y, u64 bound);

// Count of {0..window-1} missed by op over the grid {0..window-1}^arity,
// scanning only the coordinates op declares relevant when metadata is there.
u64 window_coimage_count(const WindowOperation& op, u64 window);

std::string clone_report_json(const std::vector<std::string>& fs_dsl, const std::string& g_dsl,
                              u64 bound);

}  // namespace semitop
