/*
Copyright 2026 The i2idst Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace i2i {

// Base of every error thrown by the library. The CLI maps subclasses to exit
// codes, so keep the hierarchy flat and meaningful.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter validation failed (bad rho, size mismatch, index out of range...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A transform/correlation pairing produced a non-positive coefficient variance.
class DegenerateTransform : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// A lifting decomposition was requested at an angle where its parameters blow up.
class SingularAngle : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Exhaustive search requested beyond the configured budget.
class SearchBudgetExceeded : public InvalidArgument {
public:
    SearchBudgetExceeded(const std::string& what, double space_size)
        : InvalidArgument(what), space_size_(space_size) {}

    double space_size() const noexcept { return space_size_; }

private:
    double space_size_;
};

// Integer execution would leave the accumulator-safe range.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Malformed text or binary input (bad magic, bad header, unparsable line).
class FormatError : public Error {
public:
    using Error::Error;
};

// Input ended before the decoder was done with it.
class TruncatedStream : public FormatError {
public:
    using FormatError::FormatError;
};

// The decoded plane does not match the embedded checksum.
class ChecksumMismatch : public FormatError {
public:
    using FormatError::FormatError;
};

// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace i2i
