#include "qtfunnel/trace.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "qtfunnel/errors.hpp"

namespace qtf {

namespace {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& field) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError("trace csv: bad number '" + field + "'");
  }
  return value;
}

}  // namespace

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> columns = {
      "outer_index", "inner_index", "mu",          "f",      "h",
      "h_max",       "E_mu",        "alpha",       "alpha_max",
      "iteration_class",            "nu",          "zeta",   "halvings",
      "nu_halvings", "norm_v",      "norm_t",      "norm_d", "min_x",
      "min_z"};
  return columns;
}

void TraceLog::emit(const TraceRecord& r) {
  const auto reject = [](const std::string& why) {
    throw ContractViolation("trace record rejected: " + why);
  };
  if (!(r.alpha <= r.alpha_max)) {
    reject("alpha > alpha_max");
  }
  if (!(r.alpha_max <= 1.0) || !(r.alpha > 0.0)) {
    reject("alpha_max must lie in (0, 1]");
  }
  if (!(r.min_x > 0.0)) {
    reject("min_x must be positive");
  }
  if (!(r.min_z > 0.0)) {
    reject("min_z must be positive");
  }
  if (!(r.h <= r.h_max)) {
    reject("h > h_max");
  }
  if (!records_.empty()) {
    const TraceRecord& prev = records_.back();
    const bool ordered =
        r.outer_index > prev.outer_index ||
        (r.outer_index == prev.outer_index && r.inner_index > prev.inner_index);
    if (!ordered) {
      reject("(outer_index, inner_index) not increasing");
    }
    if (r.outer_index == prev.outer_index && r.h_max > prev.h_max) {
      reject("h_max increased within an inner solve");
    }
  }
  records_.push_back(r);
}

void TraceLog::write_csv(std::ostream& out) const {
  const auto& cols = trace_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i];
  }
  out << '\n';
  for (const TraceRecord& r : records_) {
    out << r.outer_index << ',' << r.inner_index << ',' << format_double(r.mu)
        << ',' << format_double(r.f) << ',' << format_double(r.h) << ','
        << format_double(r.h_max) << ',' << format_double(r.E_mu) << ','
        << format_double(r.alpha) << ',' << format_double(r.alpha_max) << ','
        << to_string(r.iteration_class) << ',' << format_double(r.nu) << ','
        << format_double(r.zeta) << ',' << r.halvings << ',' << r.nu_halvings
        << ',' << format_double(r.norm_v) << ',' << format_double(r.norm_t)
        << ',' << format_double(r.norm_d) << ',' << format_double(r.min_x)
        << ',' << format_double(r.min_z) << '\n';
  }
}

nlohmann::json TraceLog::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const TraceRecord& r : records_) {
    rows.push_back({{"outer_index", r.outer_index},
                    {"inner_index", r.inner_index},
                    {"mu", r.mu},
                    {"f", r.f},
                    {"h", r.h},
                    {"h_max", r.h_max},
                    {"E_mu", r.E_mu},
                    {"alpha", r.alpha},
                    {"alpha_max", r.alpha_max},
                    {"iteration_class", std::string(to_string(r.iteration_class))},
                    {"nu", r.nu},
                    {"zeta", r.zeta},
                    {"halvings", r.halvings},
                    {"nu_halvings", r.nu_halvings},
                    {"norm_v", r.norm_v},
                    {"norm_t", r.norm_t},
                    {"norm_d", r.norm_d},
                    {"min_x", r.min_x},
                    {"min_z", r.min_z}});
  }
  return rows;
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("trace csv: missing header");
  }
  std::vector<TraceRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      f.push_back(cell);
    }
    if (f.size() != trace_columns().size()) {
      throw ParseError("trace csv line " + std::to_string(line_no) +
                       ": wrong field count");
    }
    TraceRecord r;
    r.outer_index = static_cast<int>(parse_double(f[0]));
    r.inner_index = static_cast<int>(parse_double(f[1]));
    r.mu = parse_double(f[2]);
    r.f = parse_double(f[3]);
    r.h = parse_double(f[4]);
    r.h_max = parse_double(f[5]);
    r.E_mu = parse_double(f[6]);
    r.alpha = parse_double(f[7]);
    r.alpha_max = parse_double(f[8]);
    r.iteration_class = f[9] == "f" ? IterationClass::f : IterationClass::h;
    r.nu = parse_double(f[10]);
    r.zeta = parse_double(f[11]);
    r.halvings = static_cast<int>(parse_double(f[12]));
    r.nu_halvings = static_cast<int>(parse_double(f[13]));
    r.norm_v = parse_double(f[14]);
    r.norm_t = parse_double(f[15]);
    r.norm_d = parse_double(f[16]);
    r.min_x = parse_double(f[17]);
    r.min_z = parse_double(f[18]);
    out.push_back(r);
  }
  return out;
}

}  // namespace qtf
