#pragma once

#include <stdexcept>
#include <string>

namespace qident {

enum class ErrorKind {
    DivisionByVanishingFactor,
    NoConvergence,
    DomainError,
    NotTerminating,
    NotAPartition,
    EmptyWindow,
    ConfigError,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::DivisionByVanishingFactor: return "DivisionByVanishingFactor";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotTerminating: return "NotTerminating";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define QIDENT_DEFINE_ERROR(Name)                                            \
    struct Name : Error {                                                    \
        explicit Name(const std::string& what) : Error(ErrorKind::Name, what) {} \
    };

QIDENT_DEFINE_ERROR(DivisionByVanishingFactor)
QIDENT_DEFINE_ERROR(NoConvergence)
QIDENT_DEFINE_ERROR(DomainError)
QIDENT_DEFINE_ERROR(NotTerminating)
QIDENT_DEFINE_ERROR(NotAPartition)
QIDENT_DEFINE_ERROR(EmptyWindow)
QIDENT_DEFINE_ERROR(ConfigError)

#undef QIDENT_DEFINE_ERROR

} // namespace qident
