// Copyright 2026 The scslab Authors
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

#ifndef SCSLAB_FORMAT_H_
#define SCSLAB_FORMAT_H_

#include <string>

namespace scslab {

// Round-trip decimal rendering (%.17g); "inf", "-inf" and "nan" for
// non-finite values. Output depends only on the value.
std::string FormatNumber(double v);

}  // namespace scslab

#endif  // SCSLAB_FORMAT_H_
