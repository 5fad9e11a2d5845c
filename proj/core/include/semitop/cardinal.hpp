#pragma once

#include <string>

#include "semitop/common.hpp"

namespace semitop {

// Cardinality of a subset of N: either an exact finite count or aleph_0.
// Addition saturates at aleph_0, which is all the arithmetic the
// cardinality laws need.
struct Cardinal {
  bool infinite = false;
  u64 count = 0;

  static Cardinal fin(u64 n) { return {false, n}; }
  static Cardinal aleph0() { return {true, 0}; }

  friend bool operator==(const Cardinal& a, const Cardinal& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.count == b.count;
  }
  friend bool operator!=(const Cardinal& a, const Cardinal& b) { return !(a == b); }

  Cardinal operator+(const Cardinal& o) const {
    if (infinite || o.infinite) return aleph0();
    return fin(count + o.count);
  }

  std::string str() const { return infinite ? "inf" : std::to_string(count); }

  static Cardinal parse(const std::string& s) {
    if (s == "inf" || s == "aleph0") return aleph0();
    return fin(std::stoull(s));
  }
};

}  // namespace semitop
