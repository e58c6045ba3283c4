#include "gcvx/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>

namespace gcvx::report {

std::size_t LawReport::unexpected_failures() const {
  return static_cast<std::size_t>(
      std::count_if(failures.begin(), failures.end(), [](const Failure& f) { return !f.erratum_expected; }));
}

json LawReport::to_json() const {
  json fs = json::array();
  for (const auto& f : failures) {
    fs.push_back({{"law", f.law}, {"instance", f.instance}, {"ref", suite + "/" + f.law + "/" + f.instance},
                  {"witness", f.witness}, {"erratumExpected", f.erratum_expected}});
  }
  return {{"suite", suite}, {"instances", instances}, {"passed", passed}, {"laws", laws}, {"failures", fs}};
}

void Harness::focus_on(std::string law, std::string instance) {
  focus_ = Focus{};
  focus_->law = std::move(law);
  focus_->instance = std::move(instance);
}

void Harness::check(const std::string& law, const std::string& instance, const std::function<Outcome(Trace&)>& fn,
                    bool erratum_expected) {
  const bool tracing = focus_ && focus_->law == law && focus_->instance == instance;
  if (focus_ && (!tracing || focus_->found)) return;
  Trace trace(tracing);
  Outcome out;
  try {
    out = fn(trace);
  } catch (const std::exception& e) {
    trace.note(std::string("threw: ") + e.what());
    out = fail({{"error", e.what()}});
  }
  if (tracing) {
    focus_->found = true;
    focus_->erratum_expected = erratum_expected;
    focus_->outcome = out;
    focus_->trace = trace.lines();
  }
  ++instances_;
  ++laws_[law];
  if (out.ok) ++passed_;
  else failures_.push_back({law, instance, std::move(out.witness), erratum_expected});
}

Harness Harness::fork() const {
  Harness shard(suite_);
  shard.focus_ = focus_;
  return shard;
}

void Harness::merge(Harness&& shard) {
  instances_ += shard.instances_;
  passed_ += shard.passed_;
  for (const auto& [law, n] : shard.laws_) laws_[law] += n;
  for (auto& f : shard.failures_) failures_.push_back(std::move(f));
  if (focus_ && shard.focus_ && shard.focus_->found && !focus_->found) focus_ = std::move(shard.focus_);
}

LawReport Harness::report() const {
  LawReport r{suite_, instances_, passed_, failures_, laws_};
  std::stable_sort(r.failures.begin(), r.failures.end(), [](const Failure& a, const Failure& b) {
    return std::tie(a.law, a.instance) < std::tie(b.law, b.instance);
  });
  return r;
}

std::size_t thread_budget() {
  if (const char* env = std::getenv("GCVX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_checks(Harness& h, std::size_t n, const std::function<void(Harness&, std::size_t)>& fn) {
  std::vector<Harness> shards;
  shards.reserve(n);
  for (std::size_t i = 0; i < n; ++i) shards.push_back(h.fork());
  auto run = [&](std::size_t i) {
    try {
      fn(shards[i], i);
    } catch (const std::exception& e) {
      const std::string what = e.what();
      shards[i].check("instance-setup", std::to_string(i), [&](Trace&) { return fail({{"error", what}}); });
    }
  };
  const std::size_t workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& s : shards) h.merge(std::move(s));
}

}  // namespace gcvx::report
