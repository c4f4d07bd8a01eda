#pragma once

#include <functional>
#include <string>

namespace shapeopt {

enum class LogLevel { Info, Warning };

using LogSink = std::function<void(LogLevel, const std::string&)>;

/// Replaces the process-wide sink (default: warnings to stderr, info dropped).
/// Passing an empty function restores the default.
void set_log_sink(LogSink sink);

void log_message(LogLevel level, const std::string& message);
inline void log_warning(const std::string& message) { log_message(LogLevel::Warning, message); }

}  // namespace shapeopt
