#pragma once

#include <cstdio>

namespace abrc::log {

enum Level { quiet = 0, error = 1, warn = 2, info = 3, debug = 4 };

/// Current verbosity, read once from the ABRC_LOG environment variable
/// (quiet|error|warn|info|debug). Defaults to warn.
Level level();

namespace detail {
void vlog(Level lv, const char* tag, const char* fmt, va_list args);
}

void errorf(const char* fmt, ...);
void warnf(const char* fmt, ...);
void infof(const char* fmt, ...);
void debugf(const char* fmt, ...);

}  // namespace abrc::log
