#include "lcft/virasoro/young.hpp"

#include <numeric>
#include <sstream>

#include "lcft/errors.hpp"

namespace lcft::virasoro {

YoungDiagram::YoungDiagram(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw DomainError("YoungDiagram: parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw DomainError("YoungDiagram: parts must be non-increasing");
    }
  }
  size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

YoungDiagram YoungDiagram::tail() const {
  YoungDiagram t;
  if (parts_.empty()) return t;
  t.parts_.assign(parts_.begin() + 1, parts_.end());
  t.size_ = size_ - parts_.front();
  return t;
}

YoungDiagram YoungDiagram::prepend(int k) const {
  if (k <= 0 || (!parts_.empty() && k < parts_.front())) {
    throw DomainError("YoungDiagram::prepend: part would break ordering");
  }
  YoungDiagram t;
  t.parts_.reserve(parts_.size() + 1);
  t.parts_.push_back(k);
  t.parts_.insert(t.parts_.end(), parts_.begin(), parts_.end());
  t.size_ = size_ + k;
  return t;
}

std::string YoungDiagram::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

namespace {

void generate(int remaining, int max_part, std::vector<int>& current, std::vector<YoungDiagram>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    current.push_back(k);
    generate(remaining - k, k, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<YoungDiagram> partitions(int n) {
  if (n < 0 || n > kMaxPartitionSize) {
    throw DomainError("partitions: n must lie in [0, " + std::to_string(kMaxPartitionSize) + "]");
  }
  std::vector<YoungDiagram> out;
  std::vector<int> current;
  generate(n, n, current, out);
  return out;
}

long long partition_count(int n) {
  if (n < 0) return 0;
  std::vector<long long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k) {
    for (int m = k; m <= n; ++m) p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - k)];
  }
  return p[static_cast<std::size_t>(n)];
}

}  // namespace lcft::virasoro
