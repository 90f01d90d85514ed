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

#ifndef CONCEPTFORGE_ERROR_HPP_
#define CONCEPTFORGE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace conceptforge {

enum class ErrorCode {
  kDuplicateId,
  kDanglingReference,
  kBroaderCycle,
  kInvalidRecord,
  kUnknownClass,
  kUnknownConcept,
  kDuplicateEntryId,
  kMalformedRecord,
  kEmptyDictionary,
  kEmptyCorpus,
  kUnlabeledDocument,
  kCorpusTooSmall,
  kDimensionMismatch,
  kEmptySet,
  kIncompleteJudgments,
  kDuplicateDocId,
  kInvalidArgument,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// Validation failure raised by loaders and operations. `subject` names the
// offending ID, line number or list of items.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, const std::string& detail = {});

  ErrorCode code() const { return code_; }
  const std::string& subject() const { return subject_; }

 private:
  ErrorCode code_;
  std::string subject_;
};

}  // namespace conceptforge

#endif  // CONCEPTFORGE_ERROR_HPP_
