#pragma once

#include <stdexcept>
#include <string>

namespace opencospan
{

// Base of every domain-level failure (CLI exit code 2).
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed input files or JSON payloads (CLI exit code 3).
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define OPENCOSPAN_DEFINE_ERROR(Name)                                                                                  \
    class Name : public Error                                                                                          \
    {                                                                                                                  \
    public:                                                                                                            \
        using Error::Error;                                                                                            \
    }

OPENCOSPAN_DEFINE_ERROR(CompositionError);
OPENCOSPAN_DEFINE_ERROR(SpanError);
OPENCOSPAN_DEFINE_ERROR(BudgetExceeded);
OPENCOSPAN_DEFINE_ERROR(InvalidSystem);
OPENCOSPAN_DEFINE_ERROR(MorphismShapeError);
OPENCOSPAN_DEFINE_ERROR(KindError);
OPENCOSPAN_DEFINE_ERROR(UnsupportedGluing);
OPENCOSPAN_DEFINE_ERROR(ComposabilityError);
OPENCOSPAN_DEFINE_ERROR(BoundaryError);
OPENCOSPAN_DEFINE_ERROR(NotInImageOfL);
OPENCOSPAN_DEFINE_ERROR(DimensionError);

#undef OPENCOSPAN_DEFINE_ERROR

// Raised by the integrator when the state stops being finite.
class DivergenceError : public Error
{
public:
    DivergenceError(const std::string &what, double last_good_time)
        : Error(what), m_last_good_time(last_good_time)
    {
    }
    double last_good_time() const
    {
        return m_last_good_time;
    }

private:
    double m_last_good_time;
};

} // namespace opencospan
