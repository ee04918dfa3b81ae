// Copyright 2026 The Poise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POISE_CRC16_HPP_
#define POISE_CRC16_HPP_

#include <cstddef>
#include <cstdint>

namespace poise {

// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no xorout.
// crc16_ccitt("123456789") == 0x29B1.
uint16_t crc16_ccitt(const uint8_t* data, size_t len);

}  // namespace poise

#endif  // POISE_CRC16_HPP_
