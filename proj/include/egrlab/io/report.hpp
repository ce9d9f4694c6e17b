#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "egrlab/faith/batch.hpp"
#include "egrlab/stats/kappa.hpp"

namespace egrlab::io {

enum class ReportFormat { kCsv, kJson, kMarkdown };

ReportFormat report_format_from_string(const std::string& s);
std::string report_format_extension(ReportFormat f);

struct HypothesisRow {
  std::string id;
  std::string metric;
  std::string condition_a;
  std::string condition_b;
  int n = 0;
  double statistic = 0.0;
  double p = 1.0;
  double effect_size = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double holm_threshold = 0.0;
  bool reject = false;
};

struct CorrelationRow {
  std::string name;
  double spearman = 0.0;
  double pearson = 0.0;
  int n = 0;
};

// Condition table with Acc, SFS, EUR, RCVA, EMC and cost columns.
void emit_condition_table(const std::vector<faith::ConditionScore>& rows,
                          ReportFormat format, const std::filesystem::path& path);
// Per-trial scores (trace_id, condition, sfs, eur, rcva, emc, claim_count).
void emit_trial_table(const std::vector<faith::TrialScore>& rows,
                      const std::filesystem::path& path);
void emit_hypothesis_table(const std::vector<HypothesisRow>& rows, ReportFormat format,
                           const std::filesystem::path& path);
void emit_kappa_table(const stats::KappaMatrix& matrix, ReportFormat format,
                      const std::filesystem::path& path);
void emit_correlation_table(const std::vector<CorrelationRow>& rows, ReportFormat format,
                            const std::filesystem::path& path);

// Round-trips a markdown pipe table back into cells (header + rows).
std::vector<std::vector<std::string>> parse_markdown_table(const std::string& content);

// Reads a per-trial score table written by emit_trial_table.
std::vector<faith::TrialScore> read_trial_table(const std::filesystem::path& path);

// Canonical numeric formatting shared by every report writer; shortest
// round-trip representation so reruns are byte-identical.
std::string format_number(double v);

}  // namespace egrlab::io
