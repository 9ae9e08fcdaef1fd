#pragma once

#include <stdexcept>
#include <string>

namespace lmgraph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent user-supplied configuration (registry, run config,
// scenario spec, thresholds, team sizes).
class ConfigError : public Error {
public:
    using Error::Error;
};

// A chat or embedding backend failed after exhausting retries.
class BackendError : public Error {
public:
    BackendError(std::string message, int status = 0, std::string body_excerpt = {})
        : Error(std::move(message)), status_(status), body_excerpt_(std::move(body_excerpt)) {}

    int status() const { return status_; }
    const std::string& body_excerpt() const { return body_excerpt_; }

private:
    int status_ = 0;
    std::string body_excerpt_;
};

// A mathematical precondition was violated (zero vector, node missing from a
// partition, mismatched node sets).
class DomainError : public Error {
public:
    using Error::Error;
};

// A dataset file failed validation; the message names the line and field.
class DatasetError : public Error {
public:
    using Error::Error;
};

} // namespace lmgraph
