// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "compresslaw/error.hpp"
#include "compresslaw/io.hpp"

namespace compresslaw {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

namespace {

constexpr std::array<std::string_view, 6> kColumns = {"model_id", "metric", "l0",
                                                      "r",        "d",      "l"};

// Splits one CSV line; double quotes may wrap a field and "" escapes a quote.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t row) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) {
    throw ParseError("row " + std::to_string(row) + ": unterminated quoted field");
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, std::size_t row, std::string_view field) {
  text = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError("row " + std::to_string(row) + ", field '" + std::string(field) +
                     "': '" + std::string(text) + "' is not a number");
  }
  return value;
}

}  // namespace

RecordSet read_records(std::istream& in, bool strict) {
  RecordSet out;
  std::string line;
  std::size_t row = 0;
  std::map<std::string, std::size_t, std::less<>> index;

  // Header: first non-blank line.
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw ParseError("empty CSV input: header row missing");
  const auto header = split_csv_line(line, row);
  for (std::size_t i = 0; i < header.size(); ++i) {
    index.emplace(std::string(trim(header[i])), i);
  }
  std::array<std::size_t, kColumns.size()> col{};
  for (std::size_t k = 0; k < kColumns.size(); ++k) {
    auto it = index.find(kColumns[k]);
    if (it == index.end()) {
      throw ParseError("CSV header is missing column '" + std::string(kColumns[k]) + "'");
    }
    col[k] = it->second;
  }

  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    try {
      const auto fields = split_csv_line(line, row);
      if (fields.size() != header.size()) {
        throw ParseError("row " + std::to_string(row) + ": expected " +
                         std::to_string(header.size()) + " fields, got " +
                         std::to_string(fields.size()));
      }
      ExperimentRecord rec;
      rec.model_id = std::string(trim(fields[col[0]]));
      try {
        rec.metric = parse_metric(trim(fields[col[1]]));
      } catch (const Error& e) {
        throw ParseError("row " + std::to_string(row) + ", field 'metric': " + e.what());
      }
      rec.l0 = parse_number(fields[col[2]], row, "l0");
      rec.r = parse_number(fields[col[3]], row, "r");
      rec.d = parse_number(fields[col[4]], row, "d");
      rec.l = parse_number(fields[col[5]], row, "l");
      try {
        validate(rec);
      } catch (const DomainError& e) {
        throw DomainError("row " + std::to_string(row) + ": " + e.what());
      }
      out.records.push_back(std::move(rec));
    } catch (const Error& e) {
      if (strict) throw;
      const std::string msg = e.what();
      std::string field;
      if (auto pos = msg.find("field '"); pos != std::string::npos) {
        const auto start = pos + 7;
        field = msg.substr(start, msg.find('\'', start) - start);
      }
      out.errors.push_back({row, field, msg});
    }
  }
  if (out.records.empty() && out.errors.empty()) {
    throw ParseError("CSV input has a header but no records");
  }
  return out;
}

RecordSet read_records(std::string_view text, bool strict) {
  std::istringstream in{std::string(text)};
  return read_records(in, strict);
}

namespace {

std::string quote_if_needed(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void write_records(std::ostream& out, std::span<const ExperimentRecord> records) {
  out << "model_id,metric,l0,r,d,l\n";
  for (const auto& rec : records) {
    out << quote_if_needed(rec.model_id) << ',' << to_string(rec.metric) << ','
        << format_number(rec.l0) << ',' << format_number(rec.r) << ','
        << format_number(rec.d) << ',' << format_number(rec.l) << '\n';
  }
}

std::string write_records(std::span<const ExperimentRecord> records) {
  std::ostringstream os;
  write_records(os, records);
  return os.str();
}

}  // namespace compresslaw
