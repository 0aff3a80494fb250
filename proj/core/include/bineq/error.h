// Copyright 2026 The bineq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BINEQ_ERROR_H_
#define BINEQ_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bineq {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The input is not a well-formed class file. `offset` is the byte offset of
// the first violation found.
class MalformedClass : public Error {
 public:
  MalformedClass(std::size_t offset, const std::string& what)
      : Error("malformed class at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// A model cannot be written back as a class file (u16 overflow and the like).
class UnencodableModel : public Error {
 public:
  using Error::Error;
};

}  // namespace bineq

#endif  // BINEQ_ERROR_H_
