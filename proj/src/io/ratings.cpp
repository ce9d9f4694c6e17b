#include "egrlab/io/ratings.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace egrlab::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    if (!field.empty() && field.back() == '\r') {
      field.pop_back();
    }
    fields.push_back(field);
  }
  return fields;
}

stats::RatingMatrix pivot(const std::vector<RatingRecord>& records,
                          const std::vector<std::string>& item_ids,
                          const std::vector<std::string>& rater_ids, bool binary) {
  stats::RatingMatrix m;
  m.item_ids = item_ids;
  m.rater_ids = rater_ids;
  m.num_categories = binary ? 2 : 5;
  m.scale_name = binary ? "binary" : "likert-5";
  m.cells.assign(item_ids.size(),
                 std::vector<std::optional<int>>(rater_ids.size(), std::nullopt));

  std::map<std::string, std::size_t> item_index;
  std::map<std::string, std::size_t> rater_index;
  for (std::size_t i = 0; i < item_ids.size(); ++i) {
    item_index[item_ids[i]] = i;
  }
  for (std::size_t r = 0; r < rater_ids.size(); ++r) {
    rater_index[rater_ids[r]] = r;
  }
  for (const RatingRecord& rec : records) {
    const int value = binary ? (rec.q2 ? 1 : 0) : rec.q1 - 1;
    m.cells[item_index.at(rec.item_id)][rater_index.at(rec.rater_id)] = value;
  }
  return m;
}

}  // namespace

RatingData load_ratings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open ratings file: " + path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("ratings file is empty (expected a header row)", 1);
  }
  const std::vector<std::string> header = split_csv_line(line);
  const std::vector<std::string> expected{"rater_id", "item_id", "q1", "q2", "cohort"};
  if (header != expected) {
    throw ParseError("expected header rater_id,item_id,q1,q2,cohort", 1);
  }

  RatingData data;
  std::vector<std::string> item_order;
  std::vector<std::string> rater_order;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw ParseError("expected 5 fields", line_number);
    }
    RatingRecord rec;
    rec.rater_id = fields[0];
    rec.item_id = fields[1];
    try {
      rec.q1 = std::stoi(fields[2]);
    } catch (...) {
      throw ParseError("q1 must be an integer", line_number);
    }
    if (rec.q1 < 1 || rec.q1 > 5) {
      throw OutOfRange("q1 must lie in [1, 5] (line " + std::to_string(line_number) + ")");
    }
    if (fields[3] == "Y" || fields[3] == "y") {
      rec.q2 = true;
    } else if (fields[3] == "N" || fields[3] == "n") {
      rec.q2 = false;
    } else {
      throw OutOfRange("q2 must be Y or N (line " + std::to_string(line_number) + ")");
    }
    rec.cohort = fields[4];

    if (std::find(item_order.begin(), item_order.end(), rec.item_id) == item_order.end()) {
      item_order.push_back(rec.item_id);
    }
    if (std::find(rater_order.begin(), rater_order.end(), rec.rater_id) ==
        rater_order.end()) {
      rater_order.push_back(rec.rater_id);
    }
    data.records.push_back(std::move(rec));
  }

  data.q1 = pivot(data.records, item_order, rater_order, /*binary=*/false);
  data.q2 = pivot(data.records, item_order, rater_order, /*binary=*/true);
  return data;
}

}  // namespace egrlab::io
