// Copyright 2026 The ConceptForge Authors.
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

#include "conceptforge/error.hpp"

namespace conceptforge {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kBroaderCycle: return "BroaderCycle";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kUnknownConcept: return "UnknownConcept";
    case ErrorCode::kDuplicateEntryId: return "DuplicateEntryId";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kEmptyDictionary: return "EmptyDictionary";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kUnlabeledDocument: return "UnlabeledDocument";
    case ErrorCode::kCorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kIncompleteJudgments: return "IncompleteJudgments";
    case ErrorCode::kDuplicateDocId: return "DuplicateDocId";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& subject,
                           const std::string& detail) {
  std::string msg(error_code_name(code));
  msg += "(" + subject + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string subject, const std::string& detail)
    : std::runtime_error(format_message(code, subject, detail)),
      code_(code),
      subject_(std::move(subject)) {}

}  // namespace conceptforge
