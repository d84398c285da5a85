#include "lcft/fields/rng.hpp"

namespace lcft::fields {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

SampleRng::SampleRng(std::uint64_t seed, GeometryKind kind, int resolution, std::uint64_t index) {
  std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL);
  k = mix64(k ^ ((static_cast<std::uint64_t>(kind) + 1) * 0xd1b54a32d192ed03ULL));
  k = mix64(k ^ (static_cast<std::uint64_t>(resolution) * 0x8cb92ba72f3d8dd7ULL));
  k = mix64(k ^ (index * 0xaef17502108ef2d9ULL + 0x2545f4914f6cdd1dULL));
  state_ = k;
}

SampleRng::result_type SampleRng::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

}  // namespace lcft::fields
