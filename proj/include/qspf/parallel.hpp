#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace qspf {

/// Worker count for library-internal parallel loops: QSPF_THREADS if set to a
/// positive integer, otherwise the number of hardware threads.
int thread_count();

/// Balanced pairwise reduction of an ordered sequence. Each level merges
/// neighbours (0,1), (2,3), ...; an unpaired last node is carried up
/// unchanged, which is equivalent to padding with identities. Sibling merges
/// within a level are independent and may run concurrently. The merge order
/// does not depend on the thread count, so results are bitwise reproducible.
template <typename Node, typename Merge>
Node reduce_tree(std::vector<Node> nodes, Merge&& merge)
{
  while (nodes.size() > 1) {
    const std::size_t pairs = nodes.size() / 2;
    std::vector<Node> next((nodes.size() + 1) / 2);
    const long long np = static_cast<long long>(pairs);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count()) if (np > 1)
#endif
    for (long long i = 0; i < np; ++i) {
      const auto k = static_cast<std::size_t>(i);
      next[k] = merge(nodes[2 * k], nodes[2 * k + 1]);
    }
    if (nodes.size() % 2 == 1) next.back() = std::move(nodes.back());
    nodes = std::move(next);
  }
  return std::move(nodes.front());
}

}  // namespace qspf
