#pragma once

#include <string>
#include <vector>

#include "respsim/sweep.hpp"

namespace respsim::app {

/// Line chart of snr_db_mean against empirical_sigma_m_mean, one polyline per
/// scale. Rows with NaN coordinates are skipped.
std::string sweep_svg(const std::vector<sweep::SummaryRow>& rows, const std::string& title);

}  // namespace respsim::app
