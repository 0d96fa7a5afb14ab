#pragma once

#include <stdexcept>
#include <string>

namespace jamison {

struct InfiniteIndexError : std::runtime_error {
    explicit InfiniteIndexError(const std::string& what) : std::runtime_error(what) {}
};

struct NotCertifiableError : std::runtime_error {
    explicit NotCertifiableError(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct ResolutionInsufficientError : std::runtime_error {
    explicit ResolutionInsufficientError(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientSupportError : std::runtime_error {
    explicit InsufficientSupportError(const std::string& what) : std::runtime_error(what) {}
};

struct SupportTooLargeError : std::runtime_error {
    explicit SupportTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct WitnessUnavailableError : std::runtime_error {
    explicit WitnessUnavailableError(const std::string& what) : std::runtime_error(what) {}
};

/// Parse failure with location info for spec files.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what) : std::runtime_error(what), line(line_) {}
};

/// Semantic validation failure; `field` is a dotted path into the spec.
struct ValidationError : std::runtime_error {
    std::string field;
    ValidationError(std::string field_, const std::string& what)
        : std::runtime_error(what), field(std::move(field_)) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace jamison
