/*
 * Copyright 2026 The Plateau Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "plateau/error.hpp"

namespace plateau {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Size: return "size error";
    case ErrorKind::Index: return "index error";
    case ErrorKind::Argument: return "argument error";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Encoding: return "encoding error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::Statistics: return "statistics error";
  }
  return "error";
}

void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace plateau
