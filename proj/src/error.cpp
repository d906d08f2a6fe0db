// Copyright 2026 The resvor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "resvor/error.hpp"

namespace resvor {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::CollinearInput: return "CollinearInput";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::NotBaseGraph: return "NotBaseGraph";
    case ErrorCode::DisconnectedDeltaGraph: return "DisconnectedDeltaGraph";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::GraphTooLarge: return "GraphTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoCooperativeAgents: return "NoCooperativeAgents";
    case ErrorCode::DegenerateFormation: return "DegenerateFormation";
    case ErrorCode::StartOnOccupiedCell: return "StartOnOccupiedCell";
    case ErrorCode::DegenerateAfterRetries: return "DegenerateAfterRetries";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace resvor
