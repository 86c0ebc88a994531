#pragma once

#include <cstdint>
#include <vector>

#include "cantor23/rational.hpp"

namespace cantor23 {

// SplitMix64 step (Steele/Lea/Flood); fixed algorithm, identical on every
// platform. Reports record the generator by this name.
constexpr const char* kRngName = "splitmix64";

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Cantor-set point truncated at `depth` ternary digits, digits iid uniform on
// {0,2}. Each (seed, index) pair keys an independent splittable stream, so
// sample i is reproducible without generating samples 0..i-1.
struct SampledPoint {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  unsigned depth = 0;
  std::vector<std::uint8_t> digits;  // most significant first, values 0 or 2
  Int numerator;                     // value = numerator / 3^depth

  Rat value() const { return make_rat(numerator, pow3(depth)); }
  Rat truncation_error() const { return make_rat(Int(1), pow3(depth)); }
};

inline SampledPoint sample_point(std::uint64_t seed, std::uint64_t index, unsigned depth) {
  SampledPoint p;
  p.seed = seed;
  p.index = index;
  p.depth = depth;
  p.digits.reserve(depth);
  // split: fold the index into the seed through one extra mixing round
  std::uint64_t state = seed;
  std::uint64_t salt = splitmix64_next(state);
  state = salt ^ (index * 0xA24BAED4963EE407ull);
  std::uint64_t word = 0;
  int bits_left = 0;
  p.numerator = 0;
  for (unsigned i = 0; i < depth; ++i) {
    if (bits_left == 0) {
      word = splitmix64_next(state);
      bits_left = 64;
    }
    std::uint8_t d = static_cast<std::uint8_t>((word & 1u) * 2u);
    word >>= 1;
    --bits_left;
    p.digits.push_back(d);
    p.numerator = p.numerator * 3 + d;
  }
  return p;
}

}  // namespace cantor23
