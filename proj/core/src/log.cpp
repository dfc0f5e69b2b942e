#include "abscissa/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace abscissa {

namespace {

LogLevel level_from_env() {
  const char* raw = std::getenv("ABSCISSA_LOG");
  if (raw == nullptr) return LogLevel::Quiet;
  const std::string v(raw);
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  return LogLevel::Quiet;
}

std::atomic<int>& current() {
  static std::atomic<int> level{static_cast<int>(level_from_env())};
  return level;
}

}  // namespace

LogLevel log_level() { return static_cast<LogLevel>(current().load()); }

void set_log_level(LogLevel level) { current().store(static_cast<int>(level)); }

void log_message(LogLevel level, std::string_view msg) {
  if (level == LogLevel::Quiet || static_cast<int>(level) > current().load()) return;
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << msg << '\n';
}

}  // namespace abscissa
