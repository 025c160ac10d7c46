// Copyright 2026 The zakhrt Authors
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

#include "zakhrt/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace zakhrt::kernels {

const Ops& active() {
  static const Ops* selected = [] {
    const char* force = std::getenv("ZAKHRT_KERNEL");
    if (force != nullptr) {
      if (std::strcmp(force, "scalar") == 0) return &scalar_ops();
      if (std::strcmp(force, "avx2") == 0) {
        const Ops* v = avx2_ops();
        return v != nullptr ? v : &scalar_ops();
      }
    }
    const Ops* v = avx2_ops();
    return v != nullptr ? v : &scalar_ops();
  }();
  return *selected;
}

}  // namespace zakhrt::kernels
