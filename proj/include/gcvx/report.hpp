#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

// Law reports and the harness every suite records into.
namespace gcvx::report {

using nlohmann::json;

struct Failure {
  std::string law;
  std::string instance;
  json witness = json::object();
  bool erratum_expected = false;
};

struct LawReport {
  std::string suite;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::vector<Failure> failures;
  /// Instances checked per law.
  std::map<std::string, std::size_t> laws;

  [[nodiscard]] std::size_t unexpected_failures() const;
  [[nodiscard]] json to_json() const;
};

/// Collects step-by-step notes when a single check is replayed for `explain`.
class Trace {
 public:
  explicit Trace(bool enabled = false) : enabled_(enabled) {}
  [[nodiscard]] bool enabled() const { return enabled_; }
  void note(const std::string& line) {
    if (enabled_) lines_.push_back(line);
  }
  [[nodiscard]] const std::vector<std::string>& lines() const { return lines_; }

 private:
  bool enabled_;
  std::vector<std::string> lines_;
};

struct Outcome {
  bool ok = true;
  json witness = json::object();
};

inline Outcome pass() { return {}; }
inline Outcome fail(json witness) { return {false, std::move(witness)}; }

struct Focus {
  std::string law;
  std::string instance;
  bool found = false;
  bool erratum_expected = false;
  Outcome outcome;
  std::vector<std::string> trace;
};

class Harness {
 public:
  explicit Harness(std::string suite) : suite_(std::move(suite)) {}

  /// Replay mode: only the matching check runs, with tracing on.
  void focus_on(std::string law, std::string instance);
  [[nodiscard]] bool focused() const { return focus_.has_value(); }
  [[nodiscard]] const std::optional<Focus>& focus() const { return focus_; }
  [[nodiscard]] const std::string& suite() const { return suite_; }

  /// Runs one law on one instance. Exceptions thrown by `fn` count as failures.
  void check(const std::string& law, const std::string& instance, const std::function<Outcome(Trace&)>& fn,
             bool erratum_expected = false);

  /// An empty harness with the same suite name and focus, for one parallel shard.
  [[nodiscard]] Harness fork() const;
  /// Appends a shard's results; call in shard order for deterministic output.
  void merge(Harness&& shard);

  /// Failures sorted by (law, instance); ties keep recording order.
  [[nodiscard]] LawReport report() const;

 private:
  std::string suite_;
  std::size_t instances_ = 0;
  std::size_t passed_ = 0;
  std::vector<Failure> failures_;
  std::map<std::string, std::size_t> laws_;
  std::optional<Focus> focus_;
};

/// Thread count: GCVX_THREADS if set and positive, else hardware concurrency.
std::size_t thread_budget();

/// Runs fn(shard, i) for i in [0, n) across threads, one harness per index,
/// merged back in index order.
void parallel_checks(Harness& h, std::size_t n, const std::function<void(Harness&, std::size_t)>& fn);

}  // namespace gcvx::report
