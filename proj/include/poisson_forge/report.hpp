#pragma once

#include <functional>
#include <string>
#include <vector>

namespace poisson_forge {

struct ReportItem {
  std::string label;
  bool passed = false;
  std::string residue;  // empty when passing
};

struct Report {
  std::string suite;
  std::vector<ReportItem> items;  // sorted by label
  double elapsed_ms = 0;
  bool passed() const;
};

using ItemTask = std::function<std::vector<ReportItem>()>;

// Worker count: POISSON_FORGE_THREADS if set to a positive integer, else the
// hardware concurrency.
unsigned worker_count();

// Runs the tasks on up to worker_count() threads and returns every item
// sorted by label. The first exception thrown by a task is rethrown.
std::vector<ReportItem> run_tasks(const std::vector<ItemTask>& tasks);

// Text: one "PASS label" / "FAIL label: residue" line per item and a summary.
std::string to_text(const std::vector<Report>& reports, bool timing = false);
// {"passed": bool, "suites": [{"suite", "passed", "items": [{"label",
// "passed", "residue"?}], "elapsed_ms"?}]}
std::string to_json(const std::vector<Report>& reports, bool timing = false);
// Error(kParse) / Error(kSchema) on malformed input.
std::vector<Report> reports_from_json(const std::string& text);

}  // namespace poisson_forge
