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

#ifndef BINEQ_OPCODES_H_
#define BINEQ_OPCODES_H_

#include <cstdint>
#include <optional>
#include <string_view>

namespace bineq {

// How the bytes following an opcode are laid out.
enum class OperandFormat : std::uint8_t {
  kNone,
  kLocal,           // u1 slot, u2 under wide
  kByteImmediate,   // bipush
  kShortImmediate,  // sipush
  kPoolU1,          // ldc
  kPoolU2,
  kBranch16,
  kBranch32,
  kIinc,  // slot + signed const; u2/s2 under wide
  kInvokeInterface,
  kInvokeDynamic,
  kNewArray,
  kMultiANewArray,
  kTableSwitch,
  kLookupSwitch,
  kWide,
  kInvalid,
};

struct OpcodeInfo {
  std::string_view mnemonic;
  OperandFormat format;
};

namespace op {
inline constexpr std::uint8_t kNop = 0x00;
inline constexpr std::uint8_t kAconstNull = 0x01;
inline constexpr std::uint8_t kIconstM1 = 0x02;
inline constexpr std::uint8_t kIconst0 = 0x03;
inline constexpr std::uint8_t kIconst1 = 0x04;
inline constexpr std::uint8_t kIconst2 = 0x05;
inline constexpr std::uint8_t kIconst5 = 0x08;
inline constexpr std::uint8_t kLconst0 = 0x09;
inline constexpr std::uint8_t kLconst1 = 0x0a;
inline constexpr std::uint8_t kFconst0 = 0x0b;
inline constexpr std::uint8_t kFconst2 = 0x0d;
inline constexpr std::uint8_t kDconst0 = 0x0e;
inline constexpr std::uint8_t kDconst1 = 0x0f;
inline constexpr std::uint8_t kBipush = 0x10;
inline constexpr std::uint8_t kSipush = 0x11;
inline constexpr std::uint8_t kLdc = 0x12;
inline constexpr std::uint8_t kLdcW = 0x13;
inline constexpr std::uint8_t kLdc2W = 0x14;
inline constexpr std::uint8_t kIload = 0x15;
inline constexpr std::uint8_t kAload = 0x19;
inline constexpr std::uint8_t kIload0 = 0x1a;
inline constexpr std::uint8_t kIload1 = 0x1b;
inline constexpr std::uint8_t kAload0 = 0x2a;
inline constexpr std::uint8_t kAload3 = 0x2d;
inline constexpr std::uint8_t kIaload = 0x2e;
inline constexpr std::uint8_t kSaload = 0x35;
inline constexpr std::uint8_t kIstore = 0x36;
inline constexpr std::uint8_t kAstore = 0x3a;
inline constexpr std::uint8_t kIstore0 = 0x3b;
inline constexpr std::uint8_t kAstore3 = 0x4e;
inline constexpr std::uint8_t kIastore = 0x4f;
inline constexpr std::uint8_t kSastore = 0x56;
inline constexpr std::uint8_t kPop = 0x57;
inline constexpr std::uint8_t kPop2 = 0x58;
inline constexpr std::uint8_t kDup = 0x59;
inline constexpr std::uint8_t kDupX1 = 0x5a;
inline constexpr std::uint8_t kDupX2 = 0x5b;
inline constexpr std::uint8_t kDup2 = 0x5c;
inline constexpr std::uint8_t kDup2X2 = 0x5e;
inline constexpr std::uint8_t kSwap = 0x5f;
inline constexpr std::uint8_t kIadd = 0x60;
inline constexpr std::uint8_t kIsub = 0x64;
inline constexpr std::uint8_t kImul = 0x68;
inline constexpr std::uint8_t kIdiv = 0x6c;
inline constexpr std::uint8_t kLxor = 0x83;
inline constexpr std::uint8_t kIinc = 0x84;
inline constexpr std::uint8_t kI2l = 0x85;
inline constexpr std::uint8_t kI2s = 0x93;
inline constexpr std::uint8_t kLcmp = 0x94;
inline constexpr std::uint8_t kDcmpg = 0x98;
inline constexpr std::uint8_t kIfeq = 0x99;
inline constexpr std::uint8_t kIfIcmplt = 0xa1;
inline constexpr std::uint8_t kIfIcmpge = 0xa2;
inline constexpr std::uint8_t kIfAcmpne = 0xa6;
inline constexpr std::uint8_t kGoto = 0xa7;
inline constexpr std::uint8_t kJsr = 0xa8;
inline constexpr std::uint8_t kRet = 0xa9;
inline constexpr std::uint8_t kTableswitch = 0xaa;
inline constexpr std::uint8_t kLookupswitch = 0xab;
inline constexpr std::uint8_t kIreturn = 0xac;
inline constexpr std::uint8_t kAreturn = 0xb0;
inline constexpr std::uint8_t kReturn = 0xb1;
inline constexpr std::uint8_t kGetstatic = 0xb2;
inline constexpr std::uint8_t kPutstatic = 0xb3;
inline constexpr std::uint8_t kGetfield = 0xb4;
inline constexpr std::uint8_t kPutfield = 0xb5;
inline constexpr std::uint8_t kInvokevirtual = 0xb6;
inline constexpr std::uint8_t kInvokespecial = 0xb7;
inline constexpr std::uint8_t kInvokestatic = 0xb8;
inline constexpr std::uint8_t kInvokeinterface = 0xb9;
inline constexpr std::uint8_t kInvokedynamic = 0xba;
inline constexpr std::uint8_t kNew = 0xbb;
inline constexpr std::uint8_t kNewarray = 0xbc;
inline constexpr std::uint8_t kAnewarray = 0xbd;
inline constexpr std::uint8_t kArraylength = 0xbe;
inline constexpr std::uint8_t kAthrow = 0xbf;
inline constexpr std::uint8_t kCheckcast = 0xc0;
inline constexpr std::uint8_t kInstanceof = 0xc1;
inline constexpr std::uint8_t kMonitorenter = 0xc2;
inline constexpr std::uint8_t kMonitorexit = 0xc3;
inline constexpr std::uint8_t kWide = 0xc4;
inline constexpr std::uint8_t kMultianewarray = 0xc5;
inline constexpr std::uint8_t kIfnull = 0xc6;
inline constexpr std::uint8_t kIfnonnull = 0xc7;
inline constexpr std::uint8_t kGotoW = 0xc8;
inline constexpr std::uint8_t kJsrW = 0xc9;
}  // namespace op

// Table lookup; undefined opcodes report OperandFormat::kInvalid.
const OpcodeInfo& GetOpcodeInfo(std::uint8_t opcode);

// Looks up an opcode by its mnemonic.
std::optional<std::uint8_t> OpcodeByMnemonic(std::string_view mnemonic);

// For the implicit-operand short forms (iload_2, astore_0, ...) returns the
// long form opcode and slot.
struct ShortForm {
  std::uint8_t long_opcode;
  int slot;
};
std::optional<ShortForm> ExpandShortLocal(std::uint8_t opcode);

}  // namespace bineq

#endif  // BINEQ_OPCODES_H_
