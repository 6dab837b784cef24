#pragma once
#include <stdexcept>
#include <string>

namespace af {

enum class ErrorKind {
    Config,            // bad user-supplied parameters
    Contract,          // API precondition violated by the caller
    DegenerateState,   // zero or otherwise unusable field
    Geometry,          // domain/ball/tile does not fit
    Resolution,        // grid too coarse for the requested analysis
    Singularity,       // evaluation at a singular point
    Model,             // model-level failure (e.g. non-bracketing solve)
    Numerical,         // non-finite values during iteration
    InsufficientData,  // not enough rows/samples
    Resource,          // allocation or file-system failure
    Io,                // malformed or unreadable file
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace af
