#include "abrc/log.hpp"

#include <cstdarg>
#include <cstdlib>
#include <cstring>

namespace abrc::log {

Level level() {
    static const Level cached = [] {
        const char* env = std::getenv("ABRC_LOG");
        if (env == nullptr) return warn;
        if (std::strcmp(env, "quiet") == 0) return quiet;
        if (std::strcmp(env, "error") == 0) return error;
        if (std::strcmp(env, "warn") == 0) return warn;
        if (std::strcmp(env, "info") == 0) return info;
        if (std::strcmp(env, "debug") == 0) return debug;
        return warn;
    }();
    return cached;
}

namespace detail {
void vlog(Level lv, const char* tag, const char* fmt, va_list args) {
    if (level() < lv) return;
    std::fprintf(stderr, "[%s] ", tag);
    std::vfprintf(stderr, fmt, args);
    std::fputc('\n', stderr);
}
}  // namespace detail

#define ABRC_LOG_IMPL(name, lv, tag)              \
    void name(const char* fmt, ...) {             \
        va_list args;                             \
        va_start(args, fmt);                      \
        detail::vlog(lv, tag, fmt, args);         \
        va_end(args);                             \
    }

ABRC_LOG_IMPL(errorf, error, "error")
ABRC_LOG_IMPL(warnf, warn, "warn")
ABRC_LOG_IMPL(infof, info, "info")
ABRC_LOG_IMPL(debugf, debug, "debug")

#undef ABRC_LOG_IMPL

}  // namespace abrc::log
