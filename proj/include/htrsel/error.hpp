// Copyright 2026 The htrsel Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace htrsel {

/// Base class for every failure that stems from the data or arguments handed
/// to a library operation. The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HTRSEL_DEFINE_ERROR(Name)            \
  class Name : public DomainError {          \
   public:                                   \
    using DomainError::DomainError;          \
  };

// corpus
HTRSEL_DEFINE_ERROR(MalformedManifest)
HTRSEL_DEFINE_ERROR(EmptyManifest)
HTRSEL_DEFINE_ERROR(NoObservableNgrams)
HTRSEL_DEFINE_ERROR(ImageLoadFailure)
// similarity
HTRSEL_DEFINE_ERROR(ArityMismatch)
HTRSEL_DEFINE_ERROR(InvalidAlpha)
HTRSEL_DEFINE_ERROR(EmptyCandidateSet)
// imaging
HTRSEL_DEFINE_ERROR(EmptySampleSet)
HTRSEL_DEFINE_ERROR(EmptyWordList)
HTRSEL_DEFINE_ERROR(InvalidRaster)
HTRSEL_DEFINE_ERROR(InvalidConfig)
// metrics
HTRSEL_DEFINE_ERROR(EmptyReference)
HTRSEL_DEFINE_ERROR(EmptyPairSet)
// planner
HTRSEL_DEFINE_ERROR(InvalidFraction)
// documents
HTRSEL_DEFINE_ERROR(MalformedDocument)

#undef HTRSEL_DEFINE_ERROR

}  // namespace htrsel
