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

#ifndef BINEQ_TESTS_SUPPORT_FIXTURES_H_
#define BINEQ_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bineq/bytes.h"
#include "bineq/engine.h"

namespace bineq::testing {

using BytePair = std::pair<Bytes, Bytes>;

// `class Empty {}` with no members.
Bytes MinimalClass();

// Class Holder with `static Class<?> kind(Shape s) { return s.getClass(); }`
// where Shape is an interface: older compilers emit invokevirtual
// java/lang/Object.getClass, newer ones invokeinterface Shape.getClass.
BytePair GetClassPair();

// `static String show(String name, int n) { return name + ":" + n; }` compiled
// as a StringBuilder chain and as invokedynamic makeConcatWithConstants.
BytePair ConcatPair();

// Class Limits with `static final int MAX = <value>;` and a constructor.
Bytes ConstantClass(std::int32_t value);

// Class Ops with arithmetic, an ldc'd int, a compare branch and a boolean
// return, covering every swap_opcode rule and the ldc constant mutation.
Bytes ArithmeticClass();

// All .class files under tests/data/corpus, path-sorted, paths relative to it.
std::vector<RawClass> LoadCorpus();

}  // namespace bineq::testing

#endif  // BINEQ_TESTS_SUPPORT_FIXTURES_H_
