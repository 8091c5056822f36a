// Copyright 2026 The mmwcov Authors
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

#include "mmwcov/simd/kernels.hpp"

namespace mmwcov::simd {

namespace scalar {
const KernelTable& table();
}

#if defined(MMWCOV_HAVE_AVX2_TU)
namespace avx2 {
const KernelTable& table();
}
#endif

}  // namespace mmwcov::simd
