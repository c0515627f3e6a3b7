#pragma once

#include <stdexcept>
#include <string>

namespace mittag {

/// Base class for all library errors.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
    /// Short machine-readable name, e.g. "domain_error".
    virtual const char* name() const noexcept = 0;
};

/// Invalid argument or parameter outside its documented domain.
class domain_error : public error {
  public:
    using error::error;
    const char* name() const noexcept override { return "domain_error"; }
};

/// A computed magnitude left the representable range (log-term > 700).
class overflow_error : public error {
  public:
    using error::error;
    const char* name() const noexcept override { return "overflow_error"; }
};

/// Iteration budget exhausted before the truncation certificate held.
class no_convergence_error : public error {
  public:
    using error::error;
    const char* name() const noexcept override { return "no_convergence_error"; }
};

/// Composition (term) budget would be exceeded.
class budget_error : public error {
  public:
    using error::error;
    const char* name() const noexcept override { return "budget_error"; }
};

/// A tail-bound was requested at an index where its preconditions fail;
/// the caller must extend the series first.
class not_applicable_error : public error {
  public:
    using error::error;
    const char* name() const noexcept override { return "not_applicable_error"; }
};

} // namespace mittag
