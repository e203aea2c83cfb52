#pragma once

#include <string>
#include <vector>

namespace logvoa {

/// Multiset of positive integers encoding the Heisenberg monomial
/// h(-n1)...h(-nk) applied to a vacuum-space vector. Parts are kept
/// weakly decreasing.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  int size() const;  // |mu| = sum of parts
  int max_part() const { return parts_.empty() ? 0 : parts_.front(); }
  int count(int part) const;

  Partition with_part(int part) const;
  /// Removes one copy of `part`; the part must be present.
  Partition without_part(int part) const;

  /// "n1,n2,...,nk", or "-" for the empty partition.
  std::string str() const;
  static Partition parse(const std::string& text);

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
};

/// Canonical basis order: by size first, then reverse-lexicographic
/// (within a level, [n] comes first and [1,...,1] last).
bool partition_less(const Partition& a, const Partition& b);

/// All partitions of n in the canonical order.
std::vector<Partition> partitions_of(int n);

}  // namespace logvoa
