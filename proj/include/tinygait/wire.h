// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

// Framing for observation/action exchange between the host plant and the
// inference device.
//
//   7E | type | seq | len (u16 LE) | payload[len] | crc8
//
// crc8 is CRC-8 (poly 0x07, init 0x00, no reflection, no xorout) over
// type..payload. Frames are length-delimited; there is no byte stuffing, and
// a stream reader resynchronizes by scanning for the next 0x7E.

#ifndef TINYGAIT_WIRE_H_
#define TINYGAIT_WIRE_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tinygait/error.h"

namespace tinygait::wire {

inline constexpr std::uint8_t kSync = 0x7E;
inline constexpr std::size_t kHeaderBytes = 5;  // sync, type, seq, len
inline constexpr std::size_t kOverheadBytes = kHeaderBytes + 1;
inline constexpr int kObservationWidth = 24;
inline constexpr int kActionWidth = 8;

enum class MsgType : std::uint8_t {
  kObservationF32 = 0x01,
  kActionF32 = 0x02,
  kObservationI8 = 0x11,
  kActionI8 = 0x12,
};

bool IsKnownType(std::uint8_t type);
// Payload size fixed by the message type.
std::size_t PayloadBytes(MsgType type);

enum class WireErrorCode {
  kBadSync,
  kBadCrc,
  kBadLength,
  kUnknownType,
  kUnexpectedType,
  kProtocol,
};

const char* ToString(WireErrorCode code);

class WireError : public DataError {
 public:
  WireError(WireErrorCode code, const std::string& detail);
  WireErrorCode code() const { return code_; }

 private:
  WireErrorCode code_;
};

std::uint8_t Crc8(std::span<const std::uint8_t> bytes);

struct Frame {
  MsgType type = MsgType::kObservationF32;
  std::uint8_t seq = 0;
  std::vector<std::uint8_t> payload;
};

std::vector<std::uint8_t> EncodeFrame(const Frame& frame);
// Decodes exactly one frame occupying all of `bytes`.
Frame DecodeFrame(std::span<const std::uint8_t> bytes);

// Observation or action values at either precision.
using WireValues = std::variant<std::vector<float>, std::vector<std::int8_t>>;

struct Message {
  std::uint8_t seq = 0;
  WireValues values;
};

std::vector<std::uint8_t> EncodeObservation(const WireValues& obs,
                                            std::uint8_t seq);
Message DecodeObservation(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> EncodeAction(const WireValues& action,
                                       std::uint8_t seq);
Message DecodeAction(std::span<const std::uint8_t> bytes);

// Incremental decoder over a byte stream. Bytes that do not start a valid
// frame are dropped one at a time.
class FrameReader {
 public:
  void Push(std::span<const std::uint8_t> bytes);
  std::optional<Frame> Next();
  std::size_t dropped_bytes() const { return dropped_; }
  std::size_t buffered_bytes() const { return buffer_.size(); }

 private:
  std::deque<std::uint8_t> buffer_;
  std::size_t dropped_ = 0;
};

// Host side of the strict request/response exchange: one observation out,
// then exactly one action back carrying the same sequence number.
class HostSession {
 public:
  std::vector<std::uint8_t> SendObservation(const WireValues& obs);
  WireValues ReceiveAction(std::span<const std::uint8_t> frame);
  bool awaiting_action() const { return awaiting_; }
  std::uint8_t next_seq() const { return next_seq_; }

 private:
  std::uint8_t next_seq_ = 0;
  bool awaiting_ = false;
};

// Device side: decodes an observation, runs `policy`, replies with an action
// frame of the same sequence number. Sequence numbers must increase by one
// (mod 256) from the first frame seen.
class DeviceSession {
 public:
  using Policy = std::function<WireValues(const WireValues&)>;

  std::vector<std::uint8_t> Step(std::span<const std::uint8_t> frame,
                                 const Policy& policy);

 private:
  std::optional<std::uint8_t> last_seq_;
};

// In-memory duplex byte pipe standing in for the serial link.
class LoopbackChannel {
 public:
  void HostWrite(std::span<const std::uint8_t> bytes);
  void DeviceWrite(std::span<const std::uint8_t> bytes);
  std::vector<std::uint8_t> DeviceReadAll();
  std::vector<std::uint8_t> HostReadAll();

 private:
  std::deque<std::uint8_t> to_device_;
  std::deque<std::uint8_t> to_host_;
};

}  // namespace tinygait::wire

#endif  // TINYGAIT_WIRE_H_
