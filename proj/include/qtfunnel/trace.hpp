#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qtfunnel/steps.hpp"

namespace qtf {

/// One accepted inner iteration. Values after the step unless noted.
struct TraceRecord {
  int outer_index = 0;
  int inner_index = 0;
  double mu = 0.0;
  double f = 0.0;
  double h = 0.0;
  /// Funnel radius after the update that follows the step.
  double h_max = 0.0;
  double E_mu = 0.0;
  double alpha = 0.0;
  double alpha_max = 0.0;
  IterationClass iteration_class = IterationClass::f;
  double nu = 0.0;
  double zeta = 0.0;
  /// Line-search halvings.
  int halvings = 0;
  int nu_halvings = 0;
  double norm_v = 0.0;
  double norm_t = 0.0;
  double norm_d = 0.0;
  double min_x = 0.0;
  double min_z = 0.0;
};

/// Column names in serialization order.
const std::vector<std::string>& trace_columns();

/**
 * Append-only run log. emit() rejects records that break the per-row
 * invariants (α <= α_max <= 1, min_x > 0, min_z > 0, h <= h_max) or the
 * ordering invariants (lexicographic (j, k), non-increasing h_max within one
 * inner solve).
 */
class TraceLog {
 public:
  void emit(const TraceRecord& record);

  const std::vector<TraceRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;

 private:
  std::vector<TraceRecord> records_;
};

/// Reads a CSV written by TraceLog::write_csv.
std::vector<TraceRecord> read_trace_csv(std::istream& in);

}  // namespace qtf
