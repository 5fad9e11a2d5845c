#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semitop/common.hpp"

namespace semitop {

// Total map on {0, ..., degree-1}; images[x] = (x)f. Composition is always
// read left to right: (x)(fg) = ((x)f)g.
struct FiniteTransformation {
  std::size_t degree = 0;
  std::vector<u64> images;

  static FiniteTransformation identity(std::size_t n);
  void validate() const;
  friend bool operator==(const FiniteTransformation&, const FiniteTransformation&) = default;
};

// Partial map on {0, ..., degree-1}; nullopt marks points outside the domain.
struct FinitePartialMap {
  std::size_t degree = 0;
  std::vector<std::optional<u64>> images;

  static FinitePartialMap identity(std::size_t n);
  void validate() const;
  friend bool operator==(const FinitePartialMap&, const FinitePartialMap&) = default;
};

// Partial injective map stored as its graph, sorted by source. Sources and
// targets are pairwise distinct.
struct FinitePartialBijection {
  std::size_t degree = 0;
  std::vector<std::pair<u64, u64>> pairs;

  static FinitePartialBijection identity(std::size_t n);
  void normalize();  // sort, then validate
  void validate() const;
  std::optional<u64> apply(u64 x) const;
  std::optional<u64> apply_inv(u64 y) const;
  friend bool operator==(const FinitePartialBijection&, const FinitePartialBijection&) = default;
};

// Arbitrary binary relation on {0, ..., degree-1}.
struct FiniteBinaryRelation {
  std::size_t degree = 0;
  std::set<std::pair<u64, u64>> pairs;

  static FiniteBinaryRelation identity(std::size_t n);
  bool contains(u64 x, u64 y) const { return pairs.count({x, y}) > 0; }
  friend bool operator==(const FiniteBinaryRelation&, const FiniteBinaryRelation&) = default;
};

FiniteTransformation compose(const FiniteTransformation& f, const FiniteTransformation& g);
FinitePartialMap compose(const FinitePartialMap& f, const FinitePartialMap& g);
FinitePartialBijection compose(const FinitePartialBijection& f, const FinitePartialBijection& g);
FiniteBinaryRelation compose(const FiniteBinaryRelation& f, const FiniteBinaryRelation& g);

FinitePartialBijection invert(const FinitePartialBijection& f);
FiniteBinaryRelation invert(const FiniteBinaryRelation& f);

// Partition of the 2n points {0, ..., n-1} x {top, bottom}. Point (x, top)
// has index x, point (x, bottom) has index n + x. block[i] is the id of the
// block containing point i; ids are normalized by first occurrence.
struct Bipartition {
  std::size_t degree = 0;
  std::vector<u64> block;

  static Bipartition identity(std::size_t n);
  void normalize();
  void validate() const;
  std::size_t block_count() const;
  std::vector<std::vector<std::size_t>> blocks() const;  // point indices per block
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

// A point of the three-layer diagram used when multiplying bipartitions:
// level 0 = top row of the left factor, level 1 = the glued middle row,
// level 2 = bottom row of the right factor.
struct DiagramPoint {
  u64 x;
  int level;  // 0, 1, or 2
  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

// For one connected pair of the product, the chain of diagram points joining
// them. Consecutive points always lie in one block of the left factor
// (levels 0/1) or one block of the right factor (levels 1/2).
struct PathCertificate {
  std::size_t from;  // product point index (0..2n-1)
  std::size_t to;
  std::vector<DiagramPoint> chain;
};

struct BipartitionProduct {
  Bipartition product;
  std::vector<PathCertificate> certificates;  // one per connected product pair (from < to)
};

BipartitionProduct bipartition_product(const Bipartition& s, const Bipartition& t);

// Re-checks a certificate against the factors: every consecutive pair of
// chain points must be joined by a single block of s or of t, and the chain
// endpoints must project to the claimed product points.
bool certificate_valid(const Bipartition& s, const Bipartition& t, const PathCertificate& cert);

// Element DSL.
//   [2,0,1]            total transformation
//   [2,-,1]            partial map
//   {(0,1),(2,2)}      binary relation (also parses as a partial bijection
//                      when sources and targets are distinct)
//   [[0,1,1'],[0']]    bipartition; x' is the bottom copy of x
FiniteTransformation parse_transformation(const std::string& s);
FinitePartialMap parse_partial_map(const std::string& s);
FiniteBinaryRelation parse_relation(const std::string& s, std::size_t degree = 0);
FinitePartialBijection parse_partial_bijection(const std::string& s, std::size_t degree = 0);
Bipartition parse_bipartition(const std::string& s);

std::string print_transformation(const FiniteTransformation& f);
std::string print_partial_map(const FinitePartialMap& f);
std::string print_relation(const FiniteBinaryRelation& f);
std::string print_partial_bijection(const FinitePartialBijection& f);
std::string print_bipartition(const Bipartition& b);

}  // namespace semitop
