#pragma once

#include <string>
#include <vector>

#include "eivdesign/design.hpp"
#include "eivdesign/swarm.hpp"

namespace eivdesign {

/// One numeric cell compared against its reference value.
struct TableCell {
  std::string row;
  std::string column;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;

  bool pass() const;
};

struct Table {
  int id = 0;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<TableCell> cells;
  /// Designs computed along the way, keyed by a short label.
  std::vector<std::pair<std::string, Design>> designs;

  bool all_pass() const;
  std::string to_csv() const;
  /// row,column,computed,expected,tolerance,pass
  std::string check_csv() const;
};

// Scenarios behind the reference tables.

/// Michaelis-Menten on [0, 80], grid prior on [8, 24] x [1.75, 5.25].
DiscretePrior michaelis_menten_table_prior(int nu);
/// Exponential on [0, 35], grid prior on {1210} x [33, 100] x [0.01, 0.3], nu = 11.
DiscretePrior exponential_table_prior();
/// Nominal exponential parameters (1210, 66.07, 0.0696).
Vec exponential_nominal_theta();

/// Error-variance ratios of the ratio-sweep tables, largest first.
const std::vector<double>& table_ratios();

/// Computes a reference table from scratch. Throws InvalidArgument for an
/// unknown id and propagates numerical failures.
Table reproduce_table(int id, const SwarmConfig& swarm = {});

}  // namespace eivdesign
