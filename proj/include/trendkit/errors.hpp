#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace trendkit {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or a domain-type invariant violation.
class validation_error : public error {
  public:
    using error::error;
};

/// Too few (or too many) observations for the requested operation.
class size_error : public validation_error {
  public:
    using validation_error::validation_error;
};

/// Statistically degenerate input, e.g. a constant series with zero variance.
class degenerate_error : public error {
  public:
    using error::error;
};

/// Malformed input text. Carries a 1-based line and optional column reference.
class format_error : public error {
  public:
    explicit format_error(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : error(annotate(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    static std::string annotate(const std::string& what, std::size_t line, std::size_t column) {
        std::string msg = what;
        if (line > 0) {
            msg += " (line " + std::to_string(line);
            if (column > 0) msg += ", column " + std::to_string(column);
            msg += ")";
        }
        return msg;
    }

    std::size_t line_;
    std::size_t column_;
};

/// Years required by an aggregation window are absent from the input.
class coverage_error : public error {
  public:
    coverage_error(const std::string& what, std::vector<int> missing_years)
        : error(annotate(what, missing_years)), missing_years_(std::move(missing_years)) {}

    const std::vector<int>& missing_years() const noexcept { return missing_years_; }

  private:
    static std::string annotate(const std::string& what, const std::vector<int>& years) {
        std::string msg = what + " (missing years:";
        for (int y : years) msg += " " + std::to_string(y);
        msg += ")";
        return msg;
    }

    std::vector<int> missing_years_;
};

}  // namespace trendkit
