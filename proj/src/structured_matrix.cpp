#include "trafficlab/structured_matrix.hpp"

namespace trafficlab {

std::int64_t centered_chain_returns(const std::vector<Permutation>& ys) {
  if (ys.empty()) throw std::invalid_argument("centered_chain_returns: empty list");
  const int n = ys.front().size();
  for (const auto& y : ys)
    if (y.size() != n) throw std::invalid_argument("centered_chain_returns: size mismatch");
  std::int64_t count = 0;
  for (int x = 0; x < n; ++x) {
    int cur = x;
    bool alive = true;
    for (auto it = ys.rbegin(); it != ys.rend() && alive; ++it) {
      int next = (*it)(cur);
      alive = next != cur;
      cur = next;
    }
    count += alive && cur == x;
  }
  return count;
}

}  // namespace trafficlab
