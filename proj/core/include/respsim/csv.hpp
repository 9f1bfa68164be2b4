#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "respsim/signals.hpp"
#include "respsim/sweep.hpp"

namespace respsim::csv {

/// printf "%.9g"; NaN prints as "nan".
std::string format_number(double v);

/// Two columns with header: time_s,value_m.
void write_signal(std::ostream& out, const signals::RespSignal& s);
void write_signal(const std::filesystem::path& path, const signals::RespSignal& s);

/// Reads the two-column format back. The sample rate is (n - 1) / time span,
/// rounded to 6 significant digits. Throws IngestionError naming the record.
signals::RespSignal read_signal(const std::filesystem::path& path);
signals::RespSignal parse_signal(std::istream& in);

void write_sweep(std::ostream& out, const std::vector<sweep::SweepRow>& rows);
void write_summary(std::ostream& out, const std::vector<sweep::SummaryRow>& rows);

}  // namespace respsim::csv
