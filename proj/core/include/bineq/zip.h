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

#ifndef BINEQ_ZIP_H_
#define BINEQ_ZIP_H_

#include <string>
#include <vector>

#include "bineq/bytes.h"
#include "bineq/error.h"

namespace bineq {

class ArchiveUnreadable : public Error {
 public:
  using Error::Error;
};

struct ZipEntry {
  std::string name;
  Bytes data;

  bool directory() const { return !name.empty() && name.back() == '/'; }
};

// Entries in central-directory order, duplicates included. Stored and
// deflated entries are supported; CRCs are verified.
std::vector<ZipEntry> ReadZip(ByteView archive);
std::vector<ZipEntry> ReadZipFile(const std::string& path);

// Deterministic archive: fixed timestamps, entries in the given order.
Bytes WriteZip(const std::vector<ZipEntry>& entries, bool deflate = true);

}  // namespace bineq

#endif  // BINEQ_ZIP_H_
