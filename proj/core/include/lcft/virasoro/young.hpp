#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace lcft::virasoro {

/// Integer partition nu = (nu_1 >= nu_2 >= ... > 0), indexing the descendant
/// L_{-nu_1} ... L_{-nu_k} |Delta>.
class YoungDiagram {
 public:
  YoungDiagram() = default;
  explicit YoungDiagram(std::vector<int> parts);
  YoungDiagram(std::initializer_list<int> parts) : YoungDiagram(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const noexcept { return parts_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  int size() const noexcept { return size_; }
  bool empty() const noexcept { return parts_.empty(); }
  int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }

  /// Drops the first (largest) part.
  YoungDiagram tail() const;
  /// Prepends k; requires k >= first part.
  YoungDiagram prepend(int k) const;

  std::string to_string() const;

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
  friend auto operator<=>(const YoungDiagram& a, const YoungDiagram& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

inline constexpr int kMaxPartitionSize = 20;

/// All partitions of n in reverse lexicographic order:
/// (n), (n-1, 1), (n-2, 2), (n-2, 1, 1), ..., (1, ..., 1).
/// Requires 0 <= n <= 20.
std::vector<YoungDiagram> partitions(int n);

/// Number of partitions p(n).
long long partition_count(int n);

}  // namespace lcft::virasoro
