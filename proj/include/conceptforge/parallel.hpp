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

#ifndef CONCEPTFORGE_PARALLEL_HPP_
#define CONCEPTFORGE_PARALLEL_HPP_

namespace conceptforge {

// Maps a user-facing thread count to an OpenMP team size. 0 selects the
// runtime default (OMP_NUM_THREADS or the core count); 1 runs serially.
int resolve_threads(int requested);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_PARALLEL_HPP_
