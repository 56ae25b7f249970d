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

#include "clinr/error.h"

namespace clinr {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid-argument";
        case ErrorCode::Dimension:
            return "dimension";
        case ErrorCode::UnsupportedGate:
            return "unsupported-gate";
        case ErrorCode::Parse:
            return "parse";
        case ErrorCode::RegimeUnreachable:
            return "regime-unreachable";
        case ErrorCode::InvalidRegime:
            return "invalid-regime";
        case ErrorCode::Address:
            return "address";
        case ErrorCode::Partition:
            return "partition";
        case ErrorCode::Layout:
            return "layout";
        case ErrorCode::DegenerateRegime:
            return "degenerate-regime";
        case ErrorCode::DivergentRestart:
            return "divergent-restart";
        case ErrorCode::Usage:
            return "usage";
    }
    return "unknown";
}

ClinrError::ClinrError(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + " error: " + message), code_(code) {
}

void fail(ErrorCode code, const std::string &message) {
    throw ClinrError(code, message);
}

}  // namespace clinr
