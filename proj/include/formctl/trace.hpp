#pragma once

#include <string>
#include <vector>

#include "formctl/sim.hpp"

namespace formctl {

// Column names of the trace CSV, in file order.
extern const std::vector<std::string> kTraceColumns;

std::string trace_csv(const std::vector<TraceRow>& rows);
std::string metrics_text(const RunResult& result);
std::string compare_report(const CompareResult& result);

// Writes via a temporary file and renames into place, so a failed write
// never leaves a partial file at `path`. Throws SimulationError on IO errors.
void write_file_atomically(const std::string& path, const std::string& content);

}  // namespace formctl
