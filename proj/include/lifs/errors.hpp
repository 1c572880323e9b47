#ifndef LIFS_ERRORS_HPP
#define LIFS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lifs {

// Error taxonomy for the whole library. Operations document which codes they
// can raise; everything else is considered a programming error and asserts.
enum class ErrorCode {
  LevelMismatch,    // grid operands live on different levels/dimensions
  ShapeMismatch,    // operand shapes disagree (map vs point vs set)
  BackendMismatch,  // euclidean argument where symbolic expected, etc.
  NegativeRadius,   // dilate/erode with r < 0
  EmptySet,         // operation requires a nonempty set
  EmptyDomain,      // a system domain became empty
  BadRate,          // contraction rate outside [0,1)
  BadWord,          // symbol out of range or wrong orientation
  DeadEnd,          // pseudo-orbit generation found no admissible continuation
  EmptyIa,          // orbit domain empty at the requested depth
  DomainViolation,  // skew-product step applied outside its fiber domain
  IntegerBeta,      // beta-derived IFS requested for an integer base
  NoRoot,           // bisection bracket does not contain a root
  DepthExceeded,    // requested depth beyond representable window
  OutOfSpace,       // a perturbed map would leave the ambient cube
  PackingOverflow,  // graph-directed embedding cannot pack the fibers
  BadConfig,        // malformed system description / CLI arguments
  IoFailure,        // file could not be read or written
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace lifs

#endif  // LIFS_ERRORS_HPP
