#ifndef QC_ERRORS_HPP
#define QC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace qc {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments or malformed inputs (CLI exit code 2).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class FileNotFound : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class MissingColumn : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// CSV rows that failed numeric parsing; carries 1-based file line numbers
// (the header is line 1).
class ParseError : public InvalidArgument {
public:
    ParseError(const std::string& msg, std::vector<long> rows)
        : InvalidArgument(msg), bad_rows(std::move(rows)) {}
    std::vector<long> bad_rows;
};

// Covariate value outside the fitted/spline domain.
class OutOfDomain : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Quantile level outside the fitted tau grid.
class ExtrapolationInTau : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// All data values identical where spread is required.
class DegenerateData : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Numerical failures (CLI exit code 3).
class RankDeficient : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

// Empty-region conditions (CLI exit code 4).
class EmptyWindow : public Error {
public:
    using Error::Error;
};

class EmptyIntersection : public Error {
public:
    using Error::Error;
};

class UnboundedRegion : public Error {
public:
    using Error::Error;
};

class EmptyAngleBin : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qc

#endif  // QC_ERRORS_HPP
