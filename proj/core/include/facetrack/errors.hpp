#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace facetrack {

/// Malformed or out-of-contract input data (files, streams). Carries the
/// source name and 1-based line number when they are known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::int64_t line, const std::string& what)
        : std::runtime_error(format(source, line, what)),
          source_(std::move(source)),
          line_(line) {}

    explicit ParseError(const std::string& what) : std::runtime_error(what), line_(-1) {}

    const std::string& source() const noexcept { return source_; }
    std::int64_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& source, std::int64_t line,
                              const std::string& what) {
        return source + ":" + std::to_string(line) + ": " + what;
    }

    std::string source_;
    std::int64_t line_ = -1;
};

/// A structurally well-formed value that violates a domain invariant
/// (range checks, uniqueness, degenerate geometry or embeddings).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad run configuration: thresholds out of range, infeasible scenario
/// parameters, inconsistent flags.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Contract misuse of a stateful component, e.g. predicting a dead
/// tracklet or stepping frames out of order.
class LifecycleError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace facetrack
