#include "trafficlab/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace trafficlab {

Partition Partition::from_labels(std::span<const int> labels) {
  Partition p;
  p.labels_.resize(labels.size());
  std::unordered_map<int, int> renumber;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto [it, inserted] = renumber.try_emplace(labels[v], p.block_count_);
    if (inserted) ++p.block_count_;
    p.labels_[v] = it->second;
  }
  return p;
}

Partition Partition::from_blocks(int ground_size, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> labels(static_cast<std::size_t>(ground_size), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("Partition::from_blocks: empty block");
    for (int v : blocks[b]) {
      if (v < 0 || v >= ground_size) throw std::invalid_argument("Partition::from_blocks: element out of range");
      if (labels[static_cast<std::size_t>(v)] != -1)
        throw std::invalid_argument("Partition::from_blocks: blocks overlap");
      labels[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end())
    throw std::invalid_argument("Partition::from_blocks: blocks do not cover the ground set");
  return from_labels(labels);
}

Partition Partition::singletons(int ground_size) {
  std::vector<int> labels(static_cast<std::size_t>(ground_size));
  std::iota(labels.begin(), labels.end(), 0);
  Partition p;
  p.labels_ = std::move(labels);
  p.block_count_ = ground_size;
  return p;
}

Partition Partition::single_block(int ground_size) {
  Partition p;
  p.labels_.assign(static_cast<std::size_t>(ground_size), 0);
  p.block_count_ = ground_size > 0 ? 1 : 0;
  return p;
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(block_count_));
  for (int v = 0; v < ground_size(); ++v) out[static_cast<std::size_t>(block_of(v))].push_back(v);
  return out;
}

bool Partition::refines(const Partition& other) const {
  if (ground_size() != other.ground_size()) throw std::invalid_argument("Partition::refines: ground size mismatch");
  std::vector<int> image(static_cast<std::size_t>(block_count_), -1);
  for (int v = 0; v < ground_size(); ++v) {
    int& slot = image[static_cast<std::size_t>(block_of(v))];
    if (slot == -1)
      slot = other.block_of(v);
    else if (slot != other.block_of(v))
      return false;
  }
  return true;
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Partition& p) {
  os << '{';
  bool first_block = true;
  for (const auto& block : p.blocks()) {
    if (!first_block) os << ',';
    first_block = false;
    os << '{';
    for (std::size_t k = 0; k < block.size(); ++k) os << (k ? "," : "") << block[k];
    os << '}';
  }
  return os << '}';
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int l : p.labels()) {
    h ^= static_cast<std::size_t>(l) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

void require_same_ground(const Partition& p, const Partition& q, const char* op) {
  if (p.ground_size() != q.ground_size())
    throw std::invalid_argument(std::string(op) + ": partitions have different ground sizes");
}

}  // namespace

Partition join(const Partition& p, const Partition& q) {
  require_same_ground(p, q, "join");
  const int n = p.ground_size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> first_p(static_cast<std::size_t>(p.block_count()), -1);
  std::vector<int> first_q(static_cast<std::size_t>(q.block_count()), -1);
  for (int v = 0; v < n; ++v) {
    for (auto [first, label] : {std::pair{&first_p, p.block_of(v)}, std::pair{&first_q, q.block_of(v)}}) {
      int& rep = (*first)[static_cast<std::size_t>(label)];
      if (rep == -1) {
        rep = v;
      } else {
        int a = find_root(parent, rep), b = find_root(parent, v);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = find_root(parent, v);
  return Partition::from_labels(labels);
}

Partition meet(const Partition& p, const Partition& q) {
  require_same_ground(p, q, "meet");
  const int n = p.ground_size();
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = p.block_of(v) * q.block_count() + q.block_of(v);
  return Partition::from_labels(labels);
}

Partition meet_all(std::span<const Partition> parts) {
  if (parts.empty()) throw std::invalid_argument("meet_all: empty list");
  Partition acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = meet(acc, parts[k]);
  return acc;
}

Partition coarsen(const Partition& base, const Partition& of_blocks) {
  if (of_blocks.ground_size() != base.block_count())
    throw std::invalid_argument("coarsen: block partition has the wrong ground size");
  std::vector<int> labels(static_cast<std::size_t>(base.ground_size()));
  for (int v = 0; v < base.ground_size(); ++v)
    labels[static_cast<std::size_t>(v)] = of_blocks.block_of(base.block_of(v));
  return Partition::from_labels(labels);
}

PartitionEnumerator::PartitionEnumerator(int ground_size)
    : rgs_(static_cast<std::size_t>(ground_size), 0), prefix_max_(static_cast<std::size_t>(ground_size), 0) {
  refresh();
}

void PartitionEnumerator::refresh() { current_ = Partition::from_labels(rgs_); }

void PartitionEnumerator::next() {
  // Rightmost position that can grow: rgs[k] <= max(rgs[0..k-1]).
  const int n = static_cast<int>(rgs_.size());
  for (int k = n - 1; k >= 1; --k) {
    if (rgs_[static_cast<std::size_t>(k)] <= prefix_max_[static_cast<std::size_t>(k - 1)]) {
      ++rgs_[static_cast<std::size_t>(k)];
      prefix_max_[static_cast<std::size_t>(k)] =
          std::max(prefix_max_[static_cast<std::size_t>(k - 1)], rgs_[static_cast<std::size_t>(k)]);
      for (int j = k + 1; j < n; ++j) {
        rgs_[static_cast<std::size_t>(j)] = 0;
        prefix_max_[static_cast<std::size_t>(j)] = prefix_max_[static_cast<std::size_t>(k)];
      }
      refresh();
      return;
    }
  }
  valid_ = false;
}

void for_each_partition(int ground_size, const std::function<void(const Partition&)>& visit) {
  for (PartitionEnumerator e(ground_size); e.valid(); e.next()) visit(e.current());
}

void for_each_coarsening(const Partition& at_least, const std::function<void(const Partition&)>& visit) {
  for (PartitionEnumerator e(at_least.block_count()); e.valid(); e.next()) visit(coarsen(at_least, e.current()));
}

std::vector<Partition> enumerate_partitions(int ground_size, const std::optional<Partition>& at_least) {
  if (ground_size < 0) throw std::invalid_argument("enumerate_partitions: negative ground size");
  std::vector<Partition> out;
  if (at_least) {
    if (at_least->ground_size() != ground_size)
      throw std::invalid_argument("enumerate_partitions: lower bound has the wrong ground size");
    for_each_coarsening(*at_least, [&](const Partition& p) { out.push_back(p); });
  } else {
    for_each_partition(ground_size, [&](const Partition& p) { out.push_back(p); });
  }
  return out;
}

std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) throw std::out_of_range("bell_number: n out of range");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace trafficlab
