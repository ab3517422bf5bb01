#ifndef FOUREXT_ERRORS_HPP
#define FOUREXT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fourext {

/// Base class for all library errors.
class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An intermediate value left the finite double range (e.g. (2R/r)^n too large).
class RangeExceeded : public Error {
   public:
    explicit RangeExceeded(const std::string& msg) : Error(msg) {}
};

/// Fewer quadrature nodes than requested series terms.
class InsufficientNodes : public Error {
   public:
    explicit InsufficientNodes(const std::string& msg) : Error(msg) {}
};

/// A quadrature self-check (node doubling) did not settle.
class NonConvergent : public Error {
   public:
    explicit NonConvergent(const std::string& msg) : Error(msg) {}
};

/// Modulation wave vector |k| <= 1 is outside the admissible family.
class BadWaveVector : public Error {
   public:
    explicit BadWaveVector(const std::string& msg) : Error(msg) {}
};

/// A bound evaluator was called outside its stated hypotheses.
class HypothesisViolated : public Error {
   public:
    explicit HypothesisViolated(const std::string& msg) : Error(msg) {}
};

/// Noise level at or above the exponential moment it must stay below.
class DeltaTooLarge : public Error {
   public:
    explicit DeltaTooLarge(const std::string& msg) : Error(msg) {}
};

/// Config text could not be parsed; carries the offending line and key.
class ParseError : public Error {
   public:
    ParseError(int line, const std::string& key, const std::string& reason)
        : Error("config line " + std::to_string(line) + ": " + reason +
                (key.empty() ? "" : " (key '" + key + "')")),
          line_(line),
          key_(key) {}
    int line() const { return line_; }
    const std::string& key() const { return key_; }

   private:
    int line_;
    std::string key_;
};

/// Config parsed but violates a numeric constraint.
class ValidationError : public Error {
   public:
    explicit ValidationError(const std::string& constraint) : Error(constraint) {}
};

/// File-system failure; message always contains the path.
class IoError : public Error {
   public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace fourext

#endif
