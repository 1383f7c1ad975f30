#ifndef UMBRAL_ERRORS_HPP
#define UMBRAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace umbral
{

// Base of every exception thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Operands disagree on dimension or truncation order.
class dimension_error : public error
{
public:
    using error::error;
};

// A requested order exceeds the truncation order or a configured resource cap.
class order_error : public error
{
public:
    using error::error;
};

// A mathematical precondition does not hold (zero first moment, wrong constant term, ...).
class domain_error : public error
{
public:
    using error::error;
};

// Malformed textual or JSON input.
class parse_error : public error
{
public:
    using error::error;
};

// A construction that is intentionally not available (e.g. m-stable processes).
class unsupported_error : public error
{
public:
    using error::error;
};

} // namespace umbral

#endif
