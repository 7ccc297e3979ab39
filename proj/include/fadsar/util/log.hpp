#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

namespace fadsar::util {

enum class LogLevel : int { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Level comes from FADSAR_LOG (error|warn|info|debug), default warn.
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("FADSAR_LOG");
        if (!env) return LogLevel::Warn;
        const std::string s(env);
        if (s == "error") return LogLevel::Error;
        if (s == "warn") return LogLevel::Warn;
        if (s == "info") return LogLevel::Info;
        if (s == "debug") return LogLevel::Debug;
        return LogLevel::Warn;
    }();
    return level;
}

namespace detail {
inline std::mutex& log_mutex() {
    static std::mutex m;
    return m;
}

template <typename... Args>
void log(LogLevel level, const char* tag, Args&&... args) {
    if (static_cast<int>(level) > static_cast<int>(log_level())) return;
    std::ostringstream os;
    os << "[" << tag << "] ";
    (os << ... << args);
    std::lock_guard<std::mutex> lock(log_mutex());
    std::cerr << os.str() << "\n";
}
}  // namespace detail

template <typename... Args>
void log_error(Args&&... args) {
    detail::log(LogLevel::Error, "error", std::forward<Args>(args)...);
}

template <typename... Args>
void log_warn(Args&&... args) {
    detail::log(LogLevel::Warn, "warn", std::forward<Args>(args)...);
}

template <typename... Args>
void log_info(Args&&... args) {
    detail::log(LogLevel::Info, "info", std::forward<Args>(args)...);
}

template <typename... Args>
void log_debug(Args&&... args) {
    detail::log(LogLevel::Debug, "debug", std::forward<Args>(args)...);
}

}  // namespace fadsar::util
