#include "permsaddle/io.hpp"

#include <fstream>
#include <sstream>

#include "permsaddle/errors.hpp"

namespace permsaddle {

namespace {

bool is_blank_or_comment(const std::string& line) {
  const std::size_t pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

std::vector<std::string> split_fields(const std::string& line) {
  std::string normalized = line;
  for (char& c : normalized) {
    if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
  }
  std::istringstream iss(normalized);
  std::vector<std::string> fields;
  std::string field;
  while (iss >> field) fields.push_back(field);
  return fields;
}

bool parse_number(const std::string& field, double& out) {
  std::size_t consumed = 0;
  try {
    out = std::stod(field, &consumed);
  } catch (const std::exception&) {
    return false;
  }
  return consumed == field.size();
}

}  // namespace

PairedSample read_paired_sample(std::istream& in) {
  PairedSample sample;
  std::string line;
  int line_no = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const std::vector<std::string> fields = split_fields(line);
    double x = 0.0, y = 0.0;
    const bool numeric =
        fields.size() == 2 && parse_number(fields[0], x) && parse_number(fields[1], y);
    if (!numeric) {
      if (!saw_data && !fields.empty()) continue;  // header row
      throw parse_error("expected two numeric columns, got \"" + line + "\"", line_no);
    }
    sample.x.push_back(x);
    sample.y.push_back(y);
    saw_data = true;
  }
  if (sample.x.size() < 2) {
    throw parse_error("need at least 2 data rows, got " + std::to_string(sample.x.size()),
                      line_no);
  }
  return sample;
}

PairedSample read_paired_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open input file: " + path, 0);
  return read_paired_sample(in);
}

std::vector<double> read_score_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open score file: " + path, 0);
  std::vector<double> scores;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    for (const std::string& field : split_fields(line)) {
      double value = 0.0;
      if (!parse_number(field, value)) {
        throw parse_error("expected a numeric score, got \"" + field + "\"", line_no);
      }
      scores.push_back(value);
    }
  }
  return scores;
}

}  // namespace permsaddle
