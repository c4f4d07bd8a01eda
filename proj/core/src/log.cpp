#include "shapeopt/log.hpp"

#include <iostream>
#include <mutex>

namespace shapeopt {

namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

LogSink& sink() {
    static LogSink s;
    return s;
}

}  // namespace

void set_log_sink(LogSink s) {
    std::lock_guard lock(sink_mutex());
    sink() = std::move(s);
}

void log_message(LogLevel level, const std::string& message) {
    std::lock_guard lock(sink_mutex());
    if (sink()) {
        sink()(level, message);
    } else if (level == LogLevel::Warning) {
        std::cerr << "warning: " << message << '\n';
    }
}

}  // namespace shapeopt
