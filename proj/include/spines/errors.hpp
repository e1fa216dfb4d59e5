#pragma once

#include <stdexcept>
#include <string>

namespace spines {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A simplex given to a constructor or reader is not a valid vertex set
/// (empty, duplicate vertex, or negative id).
class malformed_simplex_error : public error {
public:
    using error::error;
};

/// An operation was asked about a simplex that is not a member of the complex.
class missing_simplex_error : public error {
public:
    using error::error;
};

/// elementary_collapse was called on a simplex that is not free.
class illegal_collapse_error : public error {
public:
    using error::error;
};

/// is_full_subcomplex received an L that is not a subcomplex of K.
class not_subcomplex_error : public error {
public:
    using error::error;
};

/// A precondition on operation arguments was violated (empty complex,
/// unknown vertex id, bad parameter value, ...).
class invalid_argument_error : public error {
public:
    using error::error;
};

/// The brute-force homology oracle refuses inputs above its size cap.
class oracle_refused_error : public error {
public:
    using error::error;
};

/// A text or JSON input could not be parsed; carries file/line context.
class parse_error : public error {
public:
    parse_error(const std::string& source, long line, const std::string& what)
        : error(source + ":" + std::to_string(line) + ": " + what),
          source_(source),
          line_(line) {}

    explicit parse_error(const std::string& what) : error(what), line_(0) {}

    const std::string& source() const { return source_; }
    long line() const { return line_; }

private:
    std::string source_;
    long line_ = 0;
};

}  // namespace spines
