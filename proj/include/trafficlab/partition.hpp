#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace trafficlab {

/// A set partition of {0, ..., n-1}.
///
/// Stored as a restricted growth string: `label(v)` is the index of the block
/// containing v, with blocks numbered in order of their minimum element. This
/// is the canonical form, so two partitions are equal iff their labels are.
class Partition {
 public:
  Partition() = default;

  /// Canonicalizes an arbitrary labelling (equal labels = same block).
  static Partition from_labels(std::span<const int> labels);
  /// Blocks must be disjoint, nonempty, and cover [0, ground_size).
  static Partition from_blocks(int ground_size, const std::vector<std::vector<int>>& blocks);
  static Partition singletons(int ground_size);
  static Partition single_block(int ground_size);

  int ground_size() const { return static_cast<int>(labels_.size()); }
  int block_count() const { return block_count_; }
  int block_of(int element) const { return labels_[static_cast<std::size_t>(element)]; }
  bool same_block(int a, int b) const { return block_of(a) == block_of(b); }
  const std::vector<int>& labels() const { return labels_; }

  /// Blocks sorted by minimum element, elements ascending.
  std::vector<std::vector<int>> blocks() const;

  /// Refinement order: `*this <= other` iff every block of other is a union of
  /// blocks of *this.
  bool refines(const Partition& other) const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.labels_ <=> b.labels_; }

  std::string to_string() const;

 private:
  std::vector<int> labels_;
  int block_count_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Partition& p);

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

/// Finest common coarsening.
Partition join(const Partition& p, const Partition& q);
/// Nonempty blockwise intersections.
Partition meet(const Partition& p, const Partition& q);
/// Meet of a nonempty list.
Partition meet_all(std::span<const Partition> parts);

/// Composes a partition of the blocks of `base` with `base`: elements are
/// merged when their blocks are merged by `of_blocks`.
Partition coarsen(const Partition& base, const Partition& of_blocks);

/// Enumerates all partitions of [0, n) as restricted growth strings in
/// lexicographic order. Usage: `for (PartitionEnumerator e(n); e.valid(); e.next())`.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int ground_size);
  bool valid() const { return valid_; }
  void next();
  const Partition& current() const { return current_; }

 private:
  void refresh();
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
  Partition current_;
  bool valid_ = true;
};

/// Every partition of [0, n), or every coarsening of `at_least` when given,
/// exactly once and in a deterministic order.
std::vector<Partition> enumerate_partitions(int ground_size,
                                            const std::optional<Partition>& at_least = std::nullopt);

void for_each_partition(int ground_size, const std::function<void(const Partition&)>& visit);
void for_each_coarsening(const Partition& at_least, const std::function<void(const Partition&)>& visit);

/// Bell number B_n (exact up to n = 25).
std::uint64_t bell_number(int n);

}  // namespace trafficlab
