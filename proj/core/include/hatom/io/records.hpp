#pragma once

#include "hatom/bounds/lemmas.hpp"
#include "hatom/bounds/scaling.hpp"
#include "hatom/hole/correlation.hpp"
#include "hatom/hole/exchange_hole.hpp"
#include "hatom/lower/semiclassical.hpp"
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

//! Flat records emitted as CSV (header row, comma separated, LF) or JSON
//! lines. Every double is printed with 17 significant digits.
namespace hatom::io {

using Field = std::variant<double, std::int64_t, std::uint64_t, bool,
                           std::string, std::vector<double>>;

struct Record {
  std::vector<std::pair<std::string, Field>> fields;

  Record &add(std::string key, Field value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

enum class Format { csv, json };
Format parse_format(std::string_view s);
std::string_view extension(Format f);

std::string format_double(double v);

std::string csv_header(const Record &r);
//! Lists are joined with ';'; strings containing ',', '"' or newlines are
//! quoted.
std::string csv_row(const Record &r);
std::string json_line(const Record &r);

//! All records must carry the same keys in the same order (CSV only).
std::string render(const std::vector<Record> &records, Format f);
void write_records(const std::filesystem::path &file,
                   const std::vector<Record> &records, Format f);

Record to_record(const bounds::BoundTermReport &r);
//! One record per labelled part of a report.
std::vector<Record> part_records(const bounds::BoundTermReport &r);
Record to_record(const bounds::ScalingFit &f);
Record to_record(const lower::LowerBoundReport &r);
Record to_record(const lower::SandwichRow &r);
Record to_record(double Z, double delta, const hole::A1A2 &a);
Record to_record(double Z, double delta, const hole::CorrelationSweep &s);

} // namespace hatom::io
