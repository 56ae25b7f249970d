// Copyright 2026 The clinr Authors
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

#ifndef CLINR_ERROR_H
#define CLINR_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace clinr {

/// Every failure raised by the library carries one of these codes so callers
/// (notably the command line tool) can map them to exit statuses.
enum class ErrorCode {
    InvalidArgument,
    Dimension,
    UnsupportedGate,
    Parse,
    RegimeUnreachable,
    InvalidRegime,
    Address,
    Partition,
    Layout,
    DegenerateRegime,
    DivergentRestart,
    Usage,
};

std::string_view error_code_name(ErrorCode code);

class ClinrError : public std::runtime_error {
   public:
    ClinrError(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message);

}  // namespace clinr

#endif
