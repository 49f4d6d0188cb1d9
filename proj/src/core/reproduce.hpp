#pragma once

#include <string>
#include <vector>

namespace mel {

struct ReproduceRow {
  std::string label;
  std::string detail;
  bool pass = false;
};

struct ReproduceResult {
  std::string which;
  std::vector<ReproduceRow> rows;
  bool ok() const;
  std::string to_json() const;
  std::string to_table() const;  // human-readable summary
};

// Desk-scale reruns of the headline claims: "1.1" (endpoint constructions and
// Jacobian ranks), "1.2" (exact zero counts 2,3,5,6 for n=1..4 plus random
// upper-bound sweeps), "1.3" (degree cap and certificate bounds, n=5,6),
// "appendix" (Hankel rank certificates, both mu ladders, odd n <= 15).
ReproduceResult reproduce(const std::string& which, unsigned seed = 20240801);

}  // namespace mel
