#pragma once

#include <stdexcept>
#include <string>

namespace stereogt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed something that violates an operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Two inputs that must share a shape do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A parameter lies outside its admissible range (e.g. d_max >= width).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A 3D point lies at or behind the camera plane.
class BehindCameraError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A stereo rig cannot be rectified (zero baseline and similar).
class DegenerateRigError : public Error {
 public:
  using Error::Error;
};

/// Camera geometry makes the requested construction impossible.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A metric was requested over a set with no evaluable pixels.
class EmptyStratumError : public Error {
 public:
  using Error::Error;
};

/// A least-squares region is rank deficient.
class DegenerateRegionError : public Error {
 public:
  using Error::Error;
};

/// Two resolutions are not related by an integer factor.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents. The message names the offending file when known.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stereogt
