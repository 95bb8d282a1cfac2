#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drift {

enum class ErrorKind {
    io,
    parse,
    config,
    empty_corpus,
    empty_slice,
    out_of_vocabulary,
    range,
    network,
    undefined,
    selection,
    insufficient_data,
    not_found,
    conflict,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
    case ErrorKind::config: return "config";
    case ErrorKind::empty_corpus: return "empty_corpus";
    case ErrorKind::empty_slice: return "empty_slice";
    case ErrorKind::out_of_vocabulary: return "out_of_vocabulary";
    case ErrorKind::range: return "range";
    case ErrorKind::network: return "network";
    case ErrorKind::undefined: return "undefined";
    case ErrorKind::selection: return "selection";
    case ErrorKind::insufficient_data: return "insufficient_data";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::conflict: return "conflict";
    }
    return "unknown";
}

/// Single exception type for the library; `kind()` drives exit codes and HTTP status mapping.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Network failures are the only retryable class.
    bool retryable() const noexcept { return kind_ == ErrorKind::network; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace drift
