#pragma once

#include <string>
#include <vector>

#include "logvoa/fock.hpp"

namespace logvoa {

/// On-disk cache of singular-vector bases, keyed by (a = 0, omega
/// fingerprint, weight, basis-order version). Entries are re-verified
/// on load (L(1) v = L(2) v = 0 and the normalization); anything that
/// fails verification is recomputed and rewritten. Writes are atomic
/// (temp file + rename).
class SingularCache {
 public:
  explicit SingularCache(std::string directory);

  std::vector<ModuleVector> get(int weight, const OmegaSpec& omega);

  /// Number of get() calls answered from disk since construction.
  int hits() const { return hits_; }

  std::string entry_path(int weight, const OmegaSpec& omega) const;

 private:
  bool load(const std::string& path, int weight, const OmegaSpec& omega,
            std::vector<ModuleVector>& out) const;
  void store(const std::string& path, int weight, const OmegaSpec& omega,
             const std::vector<ModuleVector>& vecs) const;

  std::string dir_;
  int hits_ = 0;
};

}  // namespace logvoa
