#pragma once

#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

namespace waveorbit {

enum class LogLevel { Quiet = 0, Warn = 1, Info = 2 };

inline LogLevel& log_level() {
    static LogLevel level = LogLevel::Warn;
    return level;
}

namespace detail {
inline void log_emit(const std::string& line) {
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    std::cerr << line << '\n';
}
}  // namespace detail

template <class... Args>
void log_warn(Args&&... args) {
    if (log_level() < LogLevel::Warn) return;
    std::ostringstream ss;
    ss << "[W] ";
    (ss << ... << args);
    detail::log_emit(ss.str());
}

template <class... Args>
void log_info(Args&&... args) {
    if (log_level() < LogLevel::Info) return;
    std::ostringstream ss;
    ss << "[I] ";
    (ss << ... << args);
    detail::log_emit(ss.str());
}

}  // namespace waveorbit
