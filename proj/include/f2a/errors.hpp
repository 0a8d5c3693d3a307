#pragma once

#include <stdexcept>
#include <string>

namespace f2a {

/// Base class for every error raised by the toolkit.
class F2aError : public std::runtime_error {
public:
    explicit F2aError(const std::string& msg) : std::runtime_error(msg) {}
};

// --- obfuscator ---

class EmptyPayload : public F2aError {
public:
    EmptyPayload() : F2aError("payload is empty after trimming") {}
};

class MissingKeyword : public F2aError {
public:
    explicit MissingKeyword(const std::string& detail)
        : F2aError("keyword-tail segmentation needs a keyword: " + detail) {}
};

class ParseError : public F2aError {
public:
    ParseError(std::size_t line, const std::string& msg)
        : F2aError("parse error at line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class UnterminatedLiteral : public ParseError {
public:
    explicit UnterminatedLiteral(std::size_t line)
        : ParseError(line, "unterminated string literal") {}
};

class UnboundVariable : public F2aError {
public:
    explicit UnboundVariable(std::string name)
        : F2aError("unbound variable '" + name + "'"), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class NoCompositeAssignment : public F2aError {
public:
    NoCompositeAssignment()
        : F2aError("no task binding and no composite assignment to evaluate") {}
};

// --- feigner / scaffold ---

class InvalidRange : public F2aError {
public:
    InvalidRange(double low, double high)
        : F2aError("invalid score range [" + std::to_string(low) + ", " +
                   std::to_string(high) + "]") {}
};

class EmptyName : public F2aError {
public:
    EmptyName() : F2aError("detector name must be non-empty") {}
};

class RoleMismatch : public F2aError {
public:
    explicit RoleMismatch(const std::string& detail) : F2aError("block role mismatch: " + detail) {}
};

// --- transport / runner ---

class TransportTimeout : public F2aError {
public:
    explicit TransportTimeout(const std::string& detail) : F2aError("transport timeout: " + detail) {}
};

class RateLimited : public F2aError {
public:
    RateLimited() : F2aError("rate limited (HTTP 429)") {}
};

class EndpointError : public F2aError {
public:
    explicit EndpointError(int status, const std::string& detail = "")
        : F2aError("endpoint error, status " + std::to_string(status) +
                   (detail.empty() ? "" : ": " + detail)),
          status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

class CorpusLoadError : public F2aError {
public:
    explicit CorpusLoadError(const std::string& detail) : F2aError("corpus load error: " + detail) {}
};

// --- judge ---

class IncompleteRow : public F2aError {
public:
    explicit IncompleteRow(std::string model)
        : F2aError("model '" + model + "' is missing category cells"), model_(std::move(model)) {}
    const std::string& model() const { return model_; }

private:
    std::string model_;
};

class UnknownModel : public F2aError {
public:
    explicit UnknownModel(const std::string& model) : F2aError("unknown model '" + model + "'") {}
};

class JudgeUnparseable : public F2aError {
public:
    explicit JudgeUnparseable(const std::string& reply)
        : F2aError("judge reply contains neither HIT nor MISS: " + reply) {}
};

} // namespace f2a
