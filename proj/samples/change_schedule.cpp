// Shift schedule: 6 days, 3 shift types, at most one change of shift type.
#include <cstdio>

#include "seqbin/seqbin.hpp"

using namespace seqbin;

int main() {
  std::vector<Domain> days{{0}, {0, 1, 2}, {1, 2}, {0, 1, 2}, {2}, {0, 2}};
  // N = changes + 1: a change violates eq
  const Instance inst = make_change(6, 2, days, {1, 2}, RelationKind::Eq);
  const PropagationResult r = propagate(inst);
  std::printf("engine %s, status %s\n", to_string(r.mode).c_str(), to_string(r.status).c_str());
  for (int i = 0; i < inst.n; ++i) {
    std::printf("day %d:", i);
    for (Value v : r.domains[i]) std::printf(" %d", v);
    std::printf("\n");
  }
  std::printf("N:");
  for (int x : r.n_domain) std::printf(" %d", x);
  std::printf("\n");
  return r.failed() ? 1 : 0;
}
