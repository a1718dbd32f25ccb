#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgdd/bigint.hpp"

namespace qgdd {

/// Required block count lambda*([v 2] - [g 2][v 1]/[g 1]) / [k 2], or nullopt
/// if not an integer (or g does not divide v).
std::optional<BigInt> required_block_count(unsigned q, unsigned v, unsigned g, unsigned k,
                                           const BigInt& lambda);
/// Blocks through each point, lambda*([v-1 1] - [g-1 1]) / [k-1 1], or nullopt.
std::optional<BigInt> required_replication(unsigned q, unsigned v, unsigned g, unsigned k,
                                           const BigInt& lambda);
/// Number of spread elements, [v 1] / [g 1]; nullopt unless g divides v.
std::optional<BigInt> group_count(unsigned q, unsigned v, unsigned g);

enum class LambdaMaxSource { None, ClosedForm, DesarguesianClosedForm, Enumeration };

struct ParamReport {
  unsigned q = 2, v = 0, g = 0, k = 0;
  std::optional<BigInt> lambda;  // the lambda checked, if any
  bool admissible = false;
  std::optional<BigInt> lambda_delta;
  std::optional<BigInt> lambda_max;
  LambdaMaxSource lambda_max_source = LambdaMaxSource::None;
  std::optional<BigInt> block_count;  // at lambda, or at lambda_delta in tables
  std::optional<BigInt> replication;
  std::optional<BigInt> groups;
  std::vector<std::string> failed_conditions;

  bool desarguesian_only() const noexcept {
    return lambda_max_source == LambdaMaxSource::DesarguesianClosedForm;
  }
};

ParamReport check_conditions(unsigned q, unsigned v, unsigned g, unsigned k, const BigInt& lambda);

/// Smallest lambda >= 1 passing every necessary condition.
std::optional<BigInt> lambda_delta(unsigned q, unsigned v, unsigned g, unsigned k);

/// Known lambda_max: closed forms for k = 3 and (g, k) = (2, 4), stored
/// enumeration results otherwise.
std::pair<std::optional<BigInt>, LambdaMaxSource> known_lambda_max(unsigned q, unsigned v, unsigned g,
                                                                   unsigned k);

/// Rows v <= v_max, g | v, g >= 2, 3 <= k <= min(v - g, v / 2), in (v, g, k) order.
std::vector<ParamReport> admissible_table(unsigned q, unsigned v_max);

std::string render_table_text(const std::vector<ParamReport>& rows);
std::string render_table_csv(const std::vector<ParamReport>& rows);
std::string render_table_json(const std::vector<ParamReport>& rows);

}  // namespace qgdd
