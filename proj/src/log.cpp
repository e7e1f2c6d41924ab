#include "mqga/log.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <unistd.h>

namespace mqga::log {

namespace {

std::atomic<Level> g_level{Level::Info};
std::mutex g_write_mu;

const char* tag(Level level) {
    switch (level) {
    case Level::Debug:
        return "debug";
    case Level::Info:
        return "info";
    case Level::Warn:
        return "warn";
    case Level::Error:
        return "error";
    }
    return "?";
}

} // namespace

void set_level(Level level) {
    g_level.store(level, std::memory_order_relaxed);
}

Level level() {
    return g_level.load(std::memory_order_relaxed);
}

void init_from_env() {
    const char* env = std::getenv("MQGA_LOG");
    if (env == nullptr)
        return;
    std::string_view v{env};
    if (v == "debug")
        set_level(Level::Debug);
    else if (v == "info")
        set_level(Level::Info);
    else if (v == "warn")
        set_level(Level::Warn);
    else if (v == "error")
        set_level(Level::Error);
}

void write(Level level, std::string_view message) {
    using namespace std::chrono;
    const auto now = duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
    std::lock_guard<std::mutex> lock(g_write_mu);
    std::fprintf(stderr, "[%lld.%03lld] [%d] %-5s %.*s\n",
                 static_cast<long long>(now / 1000), static_cast<long long>(now % 1000),
                 static_cast<int>(::getpid()), tag(level), static_cast<int>(message.size()),
                 message.data());
    std::fflush(stderr);
}

} // namespace mqga::log
