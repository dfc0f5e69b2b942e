#pragma once

#include <string_view>

namespace abscissa {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

/// Read once from ABSCISSA_LOG (`info` or `debug`); anything else is quiet.
LogLevel log_level();
void set_log_level(LogLevel level);

/// Writes `msg` to stderr when `level` is enabled.
void log_message(LogLevel level, std::string_view msg);

}  // namespace abscissa
