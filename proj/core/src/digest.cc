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

#include "bineq/digest.h"

#include <openssl/evp.h>

#include <memory>

namespace bineq {
namespace {

std::string DigestHex(const EVP_MD* md, ByteView data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out, &len) != 1) {
    throw Error("digest computation failed");
  }
  return ToHex(ByteView(out, len));
}

}  // namespace

std::string Sha256Hex(ByteView data) { return DigestHex(EVP_sha256(), data); }
std::string Sha1Hex(ByteView data) { return DigestHex(EVP_sha1(), data); }
std::string Md5Hex(ByteView data) { return DigestHex(EVP_md5(), data); }

}  // namespace bineq
