// Copyright 2026 The qmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmix/errors.hpp"

namespace qmix {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotInChiImage: return "NotInChiImage";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotAntiHermitian: return "NotAntiHermitian";
    case ErrorKind::PairingFailure: return "PairingFailure";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::RankOne: return "RankOne";
    case ErrorKind::NotPurifiable: return "NotPurifiable";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotProjectorFamily: return "NotProjectorFamily";
    case ErrorKind::DriftExceeded: return "DriftExceeded";
    case ErrorKind::WitnessNotFound: return "WitnessNotFound";
    case ErrorKind::PropositionViolated: return "PropositionViolated";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace qmix
