#include <bit>
#include <cstring>
#include <istream>
#include <mutex>
#include <ostream>

#include "fftw_lock.hpp"
#include "lcft/errors.hpp"
#include "lcft/fields/field.hpp"

namespace lcft::fields {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

namespace {

constexpr char kMagic[8] = {'L', 'C', 'F', 'T', 'S', 'M', 'P', '1'};

template <class U>
void put_le(std::ostream& os, U v) {
  unsigned char b[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), sizeof(U));
}

template <class U>
U get_le(std::istream& is) {
  unsigned char b[sizeof(U)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(U))) throw DomainError("read_sample: truncated header");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void write_sample(std::ostream& os, const FieldSample& s) {
  os.write(kMagic, sizeof(kMagic));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(s.geometry.kind()));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(s.geometry.resolution()));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(s.mode_cutoff));
  put_le<std::uint64_t>(os, s.seed);
  put_le<std::uint64_t>(os, s.index);
  put_le<std::uint64_t>(os, s.values.size());
  for (double v : s.values) put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v));
  if (!os) throw Error("write_sample: stream error");
}

FieldSample read_sample(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw DomainError("read_sample: bad magic");
  }
  const auto kind = get_le<std::uint32_t>(is);
  const auto resolution = get_le<std::uint32_t>(is);
  const auto cutoff = get_le<std::uint32_t>(is);
  if (kind > 2) throw DomainError("read_sample: unknown geometry");
  FieldSample s;
  s.geometry = SurfaceGeometry(static_cast<GeometryKind>(kind), static_cast<int>(resolution));
  s.mode_cutoff = static_cast<int>(cutoff);
  s.seed = get_le<std::uint64_t>(is);
  s.index = get_le<std::uint64_t>(is);
  const auto count = get_le<std::uint64_t>(is);
  s.values.resize(count);
  for (auto& v : s.values) v = std::bit_cast<double>(get_le<std::uint64_t>(is));
  double sigma2 = 0.0;
  switch (s.geometry.kind()) {
    case GeometryKind::circle:
      sigma2 = circle_variance(s.mode_cutoff);
      break;
    case GeometryKind::flat_torus:
      sigma2 = torus_variance(s.geometry.resolution());
      break;
    case GeometryKind::round_sphere:
      sigma2 = sphere_variance(s.mode_cutoff);
      break;
  }
  s.sigma2.assign(count, sigma2);
  return s;
}

}  // namespace lcft::fields
