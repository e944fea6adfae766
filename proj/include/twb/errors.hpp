#pragma once

#include <stdexcept>
#include <string>

namespace twb {

/// A configured resource cap would be exceeded. `stage` names where.
class ResourceExceeded : public std::runtime_error
{
public:
    ResourceExceeded(std::string stage, const std::string& what)
        : std::runtime_error(what), stage_(std::move(stage))
    {
    }
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// An operator that should lie in the algebra span does not (closure bug).
class CoordinateFailure : public std::logic_error
{
    using std::logic_error::logic_error;
};

/// The span of p^r-th powers is not stable under the algebra action.
class SubfunctorFailure : public std::logic_error
{
    using std::logic_error::logic_error;
};

class UnsupportedExpr : public std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

class TruncationTooSmall : public std::out_of_range
{
    using std::out_of_range::out_of_range;
};

class ParseError : public std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

} // namespace twb
