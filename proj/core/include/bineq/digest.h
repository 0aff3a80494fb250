// Copyright 2026 The bineq Authors
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

#ifndef BINEQ_DIGEST_H_
#define BINEQ_DIGEST_H_

#include <string>

#include "bineq/bytes.h"

namespace bineq {

// Lowercase hex digests.
std::string Sha256Hex(ByteView data);
std::string Sha1Hex(ByteView data);
std::string Md5Hex(ByteView data);

}  // namespace bineq

#endif  // BINEQ_DIGEST_H_
