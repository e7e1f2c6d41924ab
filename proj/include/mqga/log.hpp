#pragma once

#include <sstream>
#include <string>
#include <string_view>

namespace mqga::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3 };

void set_level(Level level);
Level level();

// Reads MQGA_LOG (debug|info|warn|error) once at startup.
void init_from_env();

void write(Level level, std::string_view message);

template <typename... Args>
void emit(Level lvl, Args&&... args) {
    if (lvl < level())
        return;
    std::ostringstream os;
    (os << ... << args);
    write(lvl, os.str());
}

template <typename... Args>
void debug(Args&&... args) {
    emit(Level::Debug, std::forward<Args>(args)...);
}

template <typename... Args>
void info(Args&&... args) {
    emit(Level::Info, std::forward<Args>(args)...);
}

template <typename... Args>
void warn(Args&&... args) {
    emit(Level::Warn, std::forward<Args>(args)...);
}

template <typename... Args>
void error(Args&&... args) {
    emit(Level::Error, std::forward<Args>(args)...);
}

} // namespace mqga::log
