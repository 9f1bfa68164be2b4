#include "respsim/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "respsim/error.hpp"

namespace respsim::csv {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_signal(std::ostream& out, const signals::RespSignal& s) {
  out << "time_s,value_m\n";
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    out << format_number(static_cast<double>(i) / s.sample_rate_hz) << ',' << format_number(s.samples[i]) << '\n';
  }
}

void write_signal(const std::filesystem::path& path, const signals::RespSignal& s) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  write_signal(out, s);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& v) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

signals::RespSignal parse_signal(std::istream& in) {
  std::string line;
  std::vector<double> times;
  signals::RespSignal s;
  s.kind = signals::SignalKind::recorded;
  std::size_t record = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    double t = 0.0, v = 0.0;
    const bool ok = comma != std::string::npos && parse_double(std::string_view(line).substr(0, comma), t) &&
                    parse_double(std::string_view(line).substr(comma + 1), v);
    if (first) {
      first = false;
      if (!ok) continue;  // header
    }
    ++record;
    if (!ok) throw IngestionError(record, "expected two numeric columns");
    if (!std::isfinite(t) || !std::isfinite(v)) throw IngestionError(record, "non-finite value");
    times.push_back(t);
    s.samples.push_back(v);
  }
  if (s.samples.size() < 2) throw IngestionError(record, "need at least two samples");
  const double span = times.back() - times.front();
  if (!(span > 0.0)) throw IngestionError(record, "time column does not increase");
  const double rate = static_cast<double>(times.size() - 1) / span;
  const double mag = std::pow(10.0, std::floor(std::log10(rate)) - 5.0);
  s.sample_rate_hz = std::round(rate / mag) * mag;
  return s;
}

signals::RespSignal read_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_signal(in);
}

void write_sweep(std::ostream& out, const std::vector<sweep::SweepRow>& rows) {
  out << "model,param_name,param_value,scale,seed,empirical_sigma_m,rho,snr_db,f0_hz\n";
  for (const auto& r : rows) {
    out << r.model << ',' << r.param_name << ',' << format_number(r.param_value) << ',' << format_number(r.scale)
        << ',' << r.seed << ',' << format_number(r.empirical_sigma_m) << ',' << format_number(r.rho) << ','
        << format_number(r.snr_db) << ',' << format_number(r.f0_hz) << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<sweep::SummaryRow>& rows) {
  out << "model,param_name,param_value,scale,n_seeds,empirical_sigma_m_mean,rho_mean,snr_db_mean,snr_db_std\n";
  for (const auto& r : rows) {
    out << r.model << ',' << r.param_name << ',' << format_number(r.param_value) << ',' << format_number(r.scale)
        << ',' << r.n_seeds << ',' << format_number(r.empirical_sigma_m_mean) << ',' << format_number(r.rho_mean)
        << ',' << format_number(r.snr_db_mean) << ',' << format_number(r.snr_db_std) << '\n';
  }
}

}  // namespace respsim::csv
