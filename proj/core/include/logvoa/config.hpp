#pragma once

#include <string>
#include <vector>

#include "logvoa/rational.hpp"

namespace logvoa {

/// Flat key-value run configuration. Keys mirror the field names; a
/// config file holds one `key = value` pair per line with '#' comments,
/// and command-line overrides reuse the same keys.
struct RunConfig {
  Rational a{0};
  Rational lambda{0};
  Rational nu{0};
  int m1 = 2, m2 = 2, m3 = 3;
  long span = 8;         // truncation window span
  int log_cutoff = 5;    // mock operator log cutoff K
  int weight_bound = 9;
  int sample_level = 1;  // second-argument sampling depth for checks
  int bracket_range = 2; // h-bracket tested for |n| <= bracket_range
  int m = -1, n = -1;    // labels for hidden/fusion (-1: default grid)
  bool corrupt_t = false;
  std::string cache_path;
  std::string out_path;
  std::vector<Rational> grid_eigenvalues{Rational(0), Rational(1), Rational(1, 2)};
  std::vector<int> grid_sizes{1, 2, 3};

  static RunConfig from_file(const std::string& path);
  /// Applies one "key=value" override; throws ConfigError on bad input.
  void set(const std::string& key, const std::string& value, int line = 0);
  /// Canonical key=value echo used in reports.
  std::string echo() const;

  void validate() const;  // span >= 1, sizes >= 1, ...
};

}  // namespace logvoa
