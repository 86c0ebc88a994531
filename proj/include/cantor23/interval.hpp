#pragma once

#include <algorithm>

#include "cantor23/rational.hpp"

namespace cantor23 {

// Interval with exact rational endpoints and per-end openness.
// Empty iff lo > hi, or lo == hi with at least one open end.
struct RationalInterval {
  Rat lo, hi;
  bool lo_open = false, hi_open = false;

  static RationalInterval closed(const Rat& lo, const Rat& hi) {
    return {lo, hi, false, false};
  }
  static RationalInterval open(const Rat& lo, const Rat& hi) {
    return {lo, hi, true, true};
  }
  // Open ball B(center, radius).
  static RationalInterval ball(const Rat& center, const Rat& radius) {
    return {center - radius, center + radius, true, true};
  }
  static RationalInterval unit() { return closed(Rat(0), Rat(1)); }

  bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
  bool is_unit() const {
    return !lo_open && !hi_open && lo == 0 && hi == 1;
  }
  Rat length() const { return empty() ? Rat(0) : Rat(hi - lo); }
  Rat center() const { return (lo + hi) / 2; }

  bool contains(const Rat& x) const {
    if (empty()) return false;
    if (x < lo || x > hi) return false;
    if (x == lo && lo_open) return false;
    if (x == hi && hi_open) return false;
    return true;
  }

  RationalInterval intersect(const RationalInterval& o) const {
    RationalInterval r;
    if (lo > o.lo) {
      r.lo = lo;
      r.lo_open = lo_open;
    } else if (o.lo > lo) {
      r.lo = o.lo;
      r.lo_open = o.lo_open;
    } else {
      r.lo = lo;
      r.lo_open = lo_open || o.lo_open;
    }
    if (hi < o.hi) {
      r.hi = hi;
      r.hi_open = hi_open;
    } else if (o.hi < hi) {
      r.hi = o.hi;
      r.hi_open = o.hi_open;
    } else {
      r.hi = hi;
      r.hi_open = hi_open || o.hi_open;
    }
    return r;
  }

  // Dilation about the center: t * B(z, r) = B(z, t r). Openness preserved.
  RationalInterval dilate(const Rat& t) const {
    Rat z = center(), h = (hi - lo) / 2 * t;
    return {z - h, z + h, lo_open, hi_open};
  }

  // Image under x -> 1 - x; end openness swaps sides.
  RationalInterval mirror() const {
    return {Rat(1) - hi, Rat(1) - lo, hi_open, lo_open};
  }

  RationalInterval translate(const Rat& s) const {
    return {lo + s, hi + s, lo_open, hi_open};
  }
};

}  // namespace cantor23
