// Exception hierarchy shared by every excel module.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace excel {

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error
{
  public:
    IoError(std::string path, const std::string& what)
        : Error(what), path_(std::move(path))
    {
    }
    const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

/// Input bytes are not valid UTF-8.
class EncodingError : public Error
{
  public:
    EncodingError(std::size_t offset, const std::string& what) : Error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

/// An error pattern failed to compile. position() is a byte index into the pattern.
class PatternError : public Error
{
  public:
    PatternError(std::size_t position, const std::string& what)
        : Error(what), position_(position)
    {
    }
    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

/// Error level requested with a zero LOC denominator.
class UndefinedMetricError : public Error
{
  public:
    using Error::Error;
};

class InvalidArgumentError : public Error
{
  public:
    using Error::Error;
};

/// Snapshot timestamps must strictly increase within a project.
class OrderingError : public Error
{
  public:
    using Error::Error;
};

/// A store record failed to parse or failed its integrity check.
class CorruptionError : public Error
{
  public:
    CorruptionError(std::size_t line, const std::string& what) : Error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class NotFoundError : public Error
{
  public:
    using Error::Error;
};

class InsufficientDataError : public Error
{
  public:
    using Error::Error;
};

/// An interval whose start does not precede its end.
class IntervalError : public Error
{
  public:
    using Error::Error;
};

class ExtrapolationError : public Error
{
  public:
    using Error::Error;
};

} // namespace excel
