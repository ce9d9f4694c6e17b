#include "egrlab/io/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace egrlab::io {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write report file: " + path.string());
  }
  out << content;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : "";
}

// Rows of cells -> CSV and markdown; both carry identical cell strings so a
// markdown table parses back to the same values.
std::string to_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) {
        out += ',';
      }
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string to_markdown(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) {
    return "";
  }
  std::string out = "|";
  for (const auto& cell : rows.front()) {
    out += " " + cell + " |";
  }
  out += "\n|";
  for (std::size_t i = 0; i < rows.front().size(); ++i) {
    out += " --- |";
  }
  out += "\n";
  for (std::size_t r = 1; r < rows.size(); ++r) {
    out += "|";
    for (const auto& cell : rows[r]) {
      out += " " + cell + " |";
    }
    out += "\n";
  }
  return out;
}

void emit_rows(const std::vector<std::vector<std::string>>& rows, ReportFormat format,
               const std::filesystem::path& path) {
  switch (format) {
    case ReportFormat::kCsv:
      write_file(path, to_csv(rows));
      return;
    case ReportFormat::kMarkdown:
      write_file(path, to_markdown(rows));
      return;
    case ReportFormat::kJson: {
      ordered_json arr = ordered_json::array();
      for (std::size_t r = 1; r < rows.size(); ++r) {
        ordered_json obj;
        for (std::size_t c = 0; c < rows.front().size(); ++c) {
          obj[rows.front()[c]] = rows[r][c];
        }
        arr.push_back(obj);
      }
      write_file(path, arr.dump(2) + "\n");
      return;
    }
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  // Shortest representation that round-trips a double.
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  double parsed = 0.0;
  for (int precision = 1; precision <= 16; ++precision) {
    char candidate[40];
    std::snprintf(candidate, sizeof(candidate), "%.*g", precision, v);
    std::sscanf(candidate, "%lf", &parsed);
    if (parsed == v) {
      return candidate;
    }
  }
  return buffer;
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "json") return ReportFormat::kJson;
  if (s == "md" || s == "markdown" || s == "markdown-table") return ReportFormat::kMarkdown;
  throw InvalidArgument("unknown report format: " + s);
}

std::string report_format_extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::kCsv:
      return ".csv";
    case ReportFormat::kJson:
      return ".json";
    case ReportFormat::kMarkdown:
      return ".md";
  }
  return ".csv";
}

void emit_condition_table(const std::vector<faith::ConditionScore>& rows,
                          ReportFormat format, const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"condition", "trials", "failures", "acc", "sfs", "eur", "rcva", "emc",
                   "cost_tokens"});
  for (const auto& row : rows) {
    cells.push_back({row.condition_id, std::to_string(row.trials),
                     std::to_string(row.failures), format_number(row.accuracy),
                     format_number(row.sfs), format_number(row.eur),
                     optional_number(row.rcva), optional_number(row.emc),
                     format_number(row.cost_tokens)});
  }
  emit_rows(cells, format, path);
}

void emit_trial_table(const std::vector<faith::TrialScore>& rows,
                      const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(
      {"trace_id", "condition", "sfs", "eur", "rcva", "emc", "claim_count", "correct"});
  for (const auto& row : rows) {
    if (row.failed) {
      continue;  // failures live in the condition summary's failure count
    }
    cells.push_back({row.claim_id, row.condition_id, format_number(row.sfs),
                     format_number(row.eur), optional_number(row.rcva),
                     optional_number(row.emc), std::to_string(row.claim_count),
                     row.correct ? "1" : "0"});
  }
  write_file(path, to_csv(cells));
}

void emit_hypothesis_table(const std::vector<HypothesisRow>& rows, ReportFormat format,
                           const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"id", "metric", "a", "b", "n", "statistic", "p", "d", "ci_low",
                   "ci_high", "holm_threshold", "reject"});
  for (const auto& row : rows) {
    cells.push_back({row.id, row.metric, row.condition_a, row.condition_b,
                     std::to_string(row.n), format_number(row.statistic),
                     format_number(row.p), format_number(row.effect_size),
                     format_number(row.ci_low), format_number(row.ci_high),
                     format_number(row.holm_threshold), row.reject ? "reject" : "retain"});
  }
  emit_rows(cells, format, path);
}

void emit_kappa_table(const stats::KappaMatrix& matrix, ReportFormat format,
                      const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"rater"};
  header.insert(header.end(), matrix.rater_ids.begin(), matrix.rater_ids.end());
  cells.push_back(header);
  for (std::size_t i = 0; i < matrix.rater_ids.size(); ++i) {
    std::vector<std::string> row{matrix.rater_ids[i]};
    for (std::size_t j = 0; j < matrix.rater_ids.size(); ++j) {
      row.push_back(matrix.present[i][j]
                        ? format_number(matrix.values(static_cast<Eigen::Index>(i),
                                                      static_cast<Eigen::Index>(j)))
                        : "");
    }
    cells.push_back(row);
  }
  emit_rows(cells, format, path);
}

void emit_correlation_table(const std::vector<CorrelationRow>& rows, ReportFormat format,
                            const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"name", "spearman", "pearson", "n"});
  for (const auto& row : rows) {
    cells.push_back({row.name, format_number(row.spearman), format_number(row.pearson),
                     std::to_string(row.n)});
  }
  emit_rows(cells, format, path);
}

std::vector<faith::TrialScore> read_trial_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open trial score table: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("trial score table is empty", 1);
  }
  std::vector<faith::TrialScore> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      if (!field.empty() && field.back() == '\r') {
        field.pop_back();
      }
      fields.push_back(field);
    }
    if (fields.size() != 8) {
      throw ParseError("expected 8 fields in trial score table", line_number);
    }
    faith::TrialScore row;
    row.claim_id = fields[0];
    row.condition_id = fields[1];
    row.sfs = std::stod(fields[2]);
    row.eur = std::stod(fields[3]);
    if (!fields[4].empty()) {
      row.rcva = std::stod(fields[4]);
    }
    if (!fields[5].empty()) {
      row.emc = std::stod(fields[5]);
    }
    row.claim_count = std::stoi(fields[6]);
    row.correct = fields[7] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<std::string>> parse_markdown_table(const std::string& content) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(content);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line.front() != '|') {
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    // Skip the leading pipe, split on the rest.
    std::stringstream ls(line.substr(1));
    while (std::getline(ls, cell, '|')) {
      while (!cell.empty() && cell.front() == ' ') {
        cell.erase(cell.begin());
      }
      while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r')) {
        cell.pop_back();
      }
      cells.push_back(cell);
    }
    if (!cells.empty() && cells.back().empty()) {
      cells.pop_back();
    }
    // Drop the --- separator row.
    bool separator = !cells.empty();
    for (const auto& c : cells) {
      if (c.find_first_not_of("-: ") != std::string::npos) {
        separator = false;
        break;
      }
    }
    if (!separator) {
      rows.push_back(cells);
    }
  }
  return rows;
}

}  // namespace egrlab::io
