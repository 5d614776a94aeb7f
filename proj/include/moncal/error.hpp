#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace moncal {

/// Broad failure classes. Each maps onto one CLI exit code.
enum class ErrorKind {
    Config = 1,     // usage / configuration
    Data = 2,       // malformed or insufficient input data
    Numerical = 3,  // separation, non-convergence, degenerate numerics
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};

struct DataError : Error {
    explicit DataError(const std::string& w) : Error(ErrorKind::Data, w) {}
};

struct EmptyInputError : DataError {
    explicit EmptyInputError(const std::string& w) : DataError(w) {}
};

struct GapError : DataError {
    GapError(const std::string& w, int year, int month) : DataError(w), year(year), month(month) {}
    int year;
    int month;
};

struct InsufficientDataError : DataError {
    explicit InsufficientDataError(const std::string& w) : DataError(w) {}
};

/// Panels handed to build_matrix disagree in shape.
struct ConsistencyError : DataError {
    explicit ConsistencyError(const std::string& w) : DataError(w) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};

struct DegenerateSeriesError : NumericalError {
    explicit DegenerateSeriesError(const std::string& w) : NumericalError(w) {}
};

/// Out-of-domain values, e.g. a nonpositive trend under multiplicative decomposition.
struct DomainError : NumericalError {
    explicit DomainError(const std::string& w) : NumericalError(w) {}
};

struct CollinearityError : NumericalError {
    CollinearityError(const std::string& w, std::string column) : NumericalError(w), column(std::move(column)) {}
    std::string column;
};

struct SeparationError : NumericalError {
    SeparationError(const std::string& w, std::string group, double diverging_coefficient)
        : NumericalError(w), group(std::move(group)), diverging_coefficient(diverging_coefficient) {}
    std::string group;
    double diverging_coefficient;  // +inf or -inf
};

struct NonConvergenceError : NumericalError {
    NonConvergenceError(const std::string& w, std::vector<double> last_iterate)
        : NumericalError(w), last_iterate(std::move(last_iterate)) {}
    std::vector<double> last_iterate;
};

struct InvalidFitError : NumericalError {
    explicit InvalidFitError(const std::string& w) : NumericalError(w) {}
};

}  // namespace moncal
