#pragma once

#include <string>
#include <vector>

#include "cbs/sweep.hpp"

namespace cbs {

// Deterministic text renderings of sweep results. Numbers are printed with
// %.12g so identical runs produce byte-identical files.

std::string csv_render(const std::vector<CbsPoint>& rows);
std::string csv_render(const std::vector<ThetaPoint>& rows);

std::string json_render(const RunConfig& cfg, const std::vector<CbsPoint>& rows);
std::string json_render(const RunConfig& cfg, const std::vector<ThetaPoint>& rows);

// Human-readable check table, one line per check plus a summary line.
std::string verify_render(const VerifyReport& report);

// Write to the path, or to stdout when the path is empty or "-".
void write_output(const std::string& path, const std::string& content);

}  // namespace cbs
