#include "hatom/io/records.hpp"
#include "hatom/errors.hpp"
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>

namespace hatom::io {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::string csv_quote(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

std::string json_number(double v) {
  return std::isfinite(v) ? format_double(v) : "null";
}
} // namespace

Format parse_format(std::string_view s) {
  if (s == "csv")
    return Format::csv;
  if (s == "json")
    return Format::json;
  throw DomainError("unknown format '" + std::string(s) + "'");
}

std::string_view extension(Format f) {
  return f == Format::csv ? ".csv" : ".jsonl";
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string csv_header(const Record &r) {
  std::string out;
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    if (i)
      out += ',';
    out += csv_quote(r.fields[i].first);
  }
  return out;
}

std::string csv_row(const Record &r) {
  std::string out;
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    if (i)
      out += ',';
    out += std::visit(
        overloaded{
            [](double v) { return format_double(v); },
            [](std::int64_t v) { return std::to_string(v); },
            [](std::uint64_t v) { return std::to_string(v); },
            [](bool v) { return std::string(v ? "true" : "false"); },
            [](const std::string &v) { return csv_quote(v); },
            [](const std::vector<double> &v) {
              std::string s;
              for (std::size_t k = 0; k < v.size(); ++k)
                s += (k ? ";" : "") + format_double(v[k]);
              return s;
            }},
        r.fields[i].second);
  }
  return out;
}

std::string json_line(const Record &r) {
  std::string out = "{";
  for (std::size_t i = 0; i < r.fields.size(); ++i) {
    if (i)
      out += ',';
    out += nlohmann::json(r.fields[i].first).dump() + ':';
    out += std::visit(
        overloaded{
            [](double v) { return json_number(v); },
            [](std::int64_t v) { return std::to_string(v); },
            [](std::uint64_t v) { return std::to_string(v); },
            [](bool v) { return std::string(v ? "true" : "false"); },
            [](const std::string &v) { return nlohmann::json(v).dump(); },
            [](const std::vector<double> &v) {
              std::string s = "[";
              for (std::size_t k = 0; k < v.size(); ++k)
                s += (k ? "," : "") + json_number(v[k]);
              return s + "]";
            }},
        r.fields[i].second);
  }
  return out + "}";
}

std::string render(const std::vector<Record> &records, Format f) {
  std::string out;
  if (f == Format::csv) {
    if (records.empty())
      return out;
    out = csv_header(records.front()) + '\n';
    const auto header = csv_header(records.front());
    for (const auto &r : records) {
      if (csv_header(r) != header)
        throw DomainError("render: CSV records with differing keys");
      out += csv_row(r) + '\n';
    }
    return out;
  }
  for (const auto &r : records)
    out += json_line(r) + '\n';
  return out;
}

void write_records(const std::filesystem::path &file,
                   const std::vector<Record> &records, Format f) {
  if (file.has_parent_path())
    std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out)
    throw NumericalError("cannot write " + file.string());
  out << render(records, f);
}

//==============================================================================
Record to_record(const bounds::BoundTermReport &r) {
  Record rec;
  rec.add("term_id", std::string(bounds::to_string(r.term)))
      .add("Z", r.Z)
      .add("delta", r.delta)
      .add("kappa", r.kappa)
      .add("value", r.value)
      .add("mode", std::string(bounds::to_string(r.mode)))
      .add("std_error", r.std_error)
      .add("samples", r.samples);
  return rec;
}

std::vector<Record> part_records(const bounds::BoundTermReport &r) {
  std::vector<Record> out;
  for (const auto &p : r.parts) {
    Record rec;
    rec.add("term_id", std::string(bounds::to_string(r.term)))
        .add("Z", r.Z)
        .add("delta", r.delta)
        .add("kappa", r.kappa)
        .add("part", p.label)
        .add("value", p.value)
        .add("exponent", p.exponent);
    out.push_back(std::move(rec));
  }
  return out;
}

Record to_record(const bounds::ScalingFit &f) {
  Record rec;
  rec.add("term_id", f.term)
      .add("z_grid", f.z_grid)
      .add("values", f.values)
      .add("fitted_exponent", f.fitted_exponent)
      .add("claimed_exponent", f.claimed_exponent)
      .add("max_residual", f.max_residual);
  return rec;
}

Record to_record(const lower::LowerBoundReport &r) {
  Record rec;
  rec.add("Z", r.Z)
      .add("kappa", r.kappa)
      .add("delta", r.delta)
      .add("e_semiclassical", r.e_semiclassical)
      .add("d_tf", r.d_tf)
      .add("correlation_constant", r.correlation_constant)
      .add("e_tf", r.e_tf)
      .add("e_lower", r.e_lower)
      .add("ratio", r.ratio);
  return rec;
}

Record to_record(const lower::SandwichRow &r) {
  Record rec;
  rec.add("Z", r.Z)
      .add("kappa", r.kappa)
      .add("delta", r.delta)
      .add("E_TF", r.e_tf)
      .add("upper", r.upper)
      .add("lower", r.lower)
      .add("upper_gap_norm", r.upper_gap)
      .add("lower_gap_norm", r.lower_gap)
      .add("correlation_constant", r.correlation_constant);
  return rec;
}

Record to_record(double Z, double delta, const hole::A1A2 &a) {
  Record rec;
  rec.add("Z", Z)
      .add("delta", delta)
      .add("s", a.s)
      .add("R_hole", a.R_hole)
      .add("L", a.L)
      .add("A1", a.A1)
      .add("A2", a.A2);
  return rec;
}

Record to_record(double Z, double delta, const hole::CorrelationSweep &s) {
  Record rec;
  rec.add("Z", Z)
      .add("delta", delta)
      .add("configurations", s.configurations)
      .add("violations", s.violations)
      .add("violations_all_delta", s.violations_all_delta)
      .add("min_margin", s.min_margin);
  return rec;
}

} // namespace hatom::io
