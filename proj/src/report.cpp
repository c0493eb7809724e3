#include "poisson_forge/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "json_util.hpp"

namespace poisson_forge {

bool Report::passed() const {
  return std::all_of(items.begin(), items.end(), [](const ReportItem& i) { return i.passed; });
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("POISSON_FORGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

std::vector<ReportItem> run_tasks(const std::vector<ItemTask>& tasks) {
  std::vector<std::vector<ReportItem>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        results[t] = tasks[t]();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned n = std::min<std::size_t>(worker_count(), std::max<std::size_t>(tasks.size(), 1));
  std::vector<std::thread> threads;
  for (unsigned k = 1; k < n; ++k) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<ReportItem> items;
  for (auto& r : results) {
    for (auto& i : r) items.push_back(std::move(i));
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const ReportItem& a, const ReportItem& b) { return a.label < b.label; });
  return items;
}

std::string to_text(const std::vector<Report>& reports, bool timing) {
  std::ostringstream out;
  std::size_t total = 0, passed = 0;
  for (const auto& r : reports) {
    std::size_t ok = 0;
    for (const auto& i : r.items) {
      out << "[" << r.suite << "] " << (i.passed ? "PASS " : "FAIL ") << i.label;
      if (!i.passed && !i.residue.empty()) out << ": " << i.residue;
      out << "\n";
      ok += i.passed;
    }
    out << r.suite << ": " << ok << "/" << r.items.size() << " passed";
    if (timing) out << " in " << static_cast<long long>(r.elapsed_ms) << " ms";
    out << "\n";
    total += r.items.size();
    passed += ok;
  }
  out << (passed == total ? "OK" : "FAILED") << " " << passed << "/" << total << "\n";
  return out.str();
}

std::string to_json(const std::vector<Report>& reports, bool timing) {
  using detail::json;
  json suites = json::array();
  bool all = true;
  for (const auto& r : reports) {
    json items = json::array();
    for (const auto& i : r.items) {
      json item = {{"label", i.label}, {"passed", i.passed}};
      if (!i.residue.empty()) item["residue"] = i.residue;
      items.push_back(std::move(item));
    }
    json s = {{"suite", r.suite}, {"passed", r.passed()}, {"items", std::move(items)}};
    if (timing) s["elapsed_ms"] = r.elapsed_ms;
    suites.push_back(std::move(s));
    all = all && r.passed();
  }
  json root = {{"passed", all}, {"suites", std::move(suites)}};
  return root.dump(2) + "\n";
}

std::vector<Report> reports_from_json(const std::string& text) {
  using detail::json;
  json root = detail::parse_json(text);
  const json& suites = detail::require_field(root, "suites");
  if (!suites.is_array()) detail::schema_error("'suites' must be an array");
  auto boolean = [](const json& j, const char* key) {
    const json& v = detail::require_field(j, key);
    if (!v.is_boolean()) detail::schema_error(std::string("'") + key + "' must be a boolean");
    return v.get<bool>();
  };
  std::vector<Report> out;
  bool all = true;
  for (const auto& s : suites) {
    Report r;
    r.suite = detail::require_string(detail::require_field(s, "suite"), "suite");
    for (const auto& i : detail::require_field(s, "items")) {
      ReportItem item{detail::require_string(detail::require_field(i, "label"), "label"), boolean(i, "passed"), ""};
      if (i.contains("residue")) item.residue = detail::require_string(i.at("residue"), "residue");
      r.items.push_back(std::move(item));
    }
    if (s.contains("elapsed_ms")) r.elapsed_ms = s.at("elapsed_ms").get<double>();
    if (boolean(s, "passed") != r.passed()) detail::schema_error("suite verdict disagrees with its items");
    all = all && r.passed();
    out.push_back(std::move(r));
  }
  if (boolean(root, "passed") != all) detail::schema_error("overall verdict disagrees with the suites");
  return out;
}

}  // namespace poisson_forge
