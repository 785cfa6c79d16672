// Copyright 2026 The tinygait Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tinygait/wire.h"

#include <array>
#include <string>

#include "byte_io.h"

namespace tinygait::wire {
namespace {

constexpr std::array<std::uint8_t, 256> MakeCrcTable() {
  std::array<std::uint8_t, 256> table{};
  for (int i = 0; i < 256; ++i) {
    std::uint8_t c = static_cast<std::uint8_t>(i);
    for (int b = 0; b < 8; ++b) {
      c = static_cast<std::uint8_t>((c & 0x80) ? (c << 1) ^ 0x07 : c << 1);
    }
    table[i] = c;
  }
  return table;
}

constexpr auto kCrcTable = MakeCrcTable();

bool IsObservation(MsgType t) {
  return t == MsgType::kObservationF32 || t == MsgType::kObservationI8;
}

std::vector<std::uint8_t> EncodeValues(const WireValues& values, int width,
                                       MsgType f32_type, MsgType i8_type,
                                       std::uint8_t seq) {
  Frame frame;
  frame.seq = seq;
  internal::ByteWriter w;
  if (const auto* f = std::get_if<std::vector<float>>(&values)) {
    if (static_cast<int>(f->size()) != width) {
      throw ShapeError("expected " + std::to_string(width) + " values, got " +
                       std::to_string(f->size()));
    }
    frame.type = f32_type;
    w.PutAll<float>(*f);
  } else {
    const auto& q = std::get<std::vector<std::int8_t>>(values);
    if (static_cast<int>(q.size()) != width) {
      throw ShapeError("expected " + std::to_string(width) + " values, got " +
                       std::to_string(q.size()));
    }
    frame.type = i8_type;
    w.PutAll<std::int8_t>(q);
  }
  frame.payload = w.Take();
  return EncodeFrame(frame);
}

Message DecodeValues(std::span<const std::uint8_t> bytes, int width,
                     MsgType f32_type, MsgType i8_type) {
  const Frame frame = DecodeFrame(bytes);
  internal::ByteReader r(frame.payload);
  Message m;
  m.seq = frame.seq;
  if (frame.type == f32_type) {
    m.values = r.GetVector<float>(width);
  } else if (frame.type == i8_type) {
    m.values = r.GetVector<std::int8_t>(width);
  } else {
    throw WireError(WireErrorCode::kUnexpectedType,
                    "message type " + std::to_string(static_cast<int>(frame.type)));
  }
  return m;
}

}  // namespace

bool IsKnownType(std::uint8_t type) {
  return type == 0x01 || type == 0x02 || type == 0x11 || type == 0x12;
}

std::size_t PayloadBytes(MsgType type) {
  switch (type) {
    case MsgType::kObservationF32: return 4 * kObservationWidth;
    case MsgType::kActionF32: return 4 * kActionWidth;
    case MsgType::kObservationI8: return kObservationWidth;
    case MsgType::kActionI8: return kActionWidth;
  }
  return 0;
}

const char* ToString(WireErrorCode code) {
  switch (code) {
    case WireErrorCode::kBadSync: return "bad sync";
    case WireErrorCode::kBadCrc: return "bad crc";
    case WireErrorCode::kBadLength: return "bad length";
    case WireErrorCode::kUnknownType: return "unknown type";
    case WireErrorCode::kUnexpectedType: return "unexpected type";
    case WireErrorCode::kProtocol: return "protocol error";
  }
  return "wire error";
}

WireError::WireError(WireErrorCode code, const std::string& detail)
    : DataError(std::string(ToString(code)) + ": " + detail), code_(code) {}

std::uint8_t Crc8(std::span<const std::uint8_t> bytes) {
  std::uint8_t crc = 0;
  for (std::uint8_t b : bytes) crc = kCrcTable[crc ^ b];
  return crc;
}

std::vector<std::uint8_t> EncodeFrame(const Frame& frame) {
  if (frame.payload.size() != PayloadBytes(frame.type)) {
    throw WireError(WireErrorCode::kBadLength,
                    "payload of " + std::to_string(frame.payload.size()) +
                        " bytes for this message type");
  }
  internal::ByteWriter w;
  w.Put(kSync);
  w.Put(static_cast<std::uint8_t>(frame.type));
  w.Put(frame.seq);
  w.Put(static_cast<std::uint16_t>(frame.payload.size()));
  w.PutBytes(frame.payload);
  std::vector<std::uint8_t> bytes = w.Take();
  bytes.push_back(Crc8(std::span(bytes).subspan(1)));
  return bytes;
}

Frame DecodeFrame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kOverheadBytes) {
    throw WireError(WireErrorCode::kBadLength, "frame shorter than header");
  }
  if (bytes[0] != kSync) {
    throw WireError(WireErrorCode::kBadSync, "first byte is not 0x7E");
  }
  const std::size_t len = bytes[3] | (std::size_t{bytes[4]} << 8);
  if (bytes.size() != kOverheadBytes + len) {
    throw WireError(WireErrorCode::kBadLength,
                    "length field " + std::to_string(len) + " vs " +
                        std::to_string(bytes.size()) + " frame bytes");
  }
  const auto body = bytes.subspan(1, kHeaderBytes - 1 + len);
  if (Crc8(body) != bytes.back()) {
    throw WireError(WireErrorCode::kBadCrc, "checksum mismatch");
  }
  if (!IsKnownType(bytes[1])) {
    throw WireError(WireErrorCode::kUnknownType,
                    "type byte " + std::to_string(bytes[1]));
  }
  Frame frame;
  frame.type = static_cast<MsgType>(bytes[1]);
  frame.seq = bytes[2];
  if (len != PayloadBytes(frame.type)) {
    throw WireError(WireErrorCode::kBadLength,
                    "payload length " + std::to_string(len) +
                        " does not match message type");
  }
  frame.payload.assign(bytes.begin() + kHeaderBytes, bytes.end() - 1);
  return frame;
}

std::vector<std::uint8_t> EncodeObservation(const WireValues& obs,
                                            std::uint8_t seq) {
  return EncodeValues(obs, kObservationWidth, MsgType::kObservationF32,
                      MsgType::kObservationI8, seq);
}

Message DecodeObservation(std::span<const std::uint8_t> bytes) {
  return DecodeValues(bytes, kObservationWidth, MsgType::kObservationF32,
                      MsgType::kObservationI8);
}

std::vector<std::uint8_t> EncodeAction(const WireValues& action,
                                       std::uint8_t seq) {
  return EncodeValues(action, kActionWidth, MsgType::kActionF32,
                      MsgType::kActionI8, seq);
}

Message DecodeAction(std::span<const std::uint8_t> bytes) {
  return DecodeValues(bytes, kActionWidth, MsgType::kActionF32,
                      MsgType::kActionI8);
}

void FrameReader::Push(std::span<const std::uint8_t> bytes) {
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<Frame> FrameReader::Next() {
  while (!buffer_.empty()) {
    if (buffer_.front() != kSync) {
      buffer_.pop_front();
      ++dropped_;
      continue;
    }
    if (buffer_.size() < kHeaderBytes) return std::nullopt;
    const std::size_t len = buffer_[3] | (std::size_t{buffer_[4]} << 8);
    const bool plausible =
        IsKnownType(buffer_[1]) &&
        len == PayloadBytes(static_cast<MsgType>(buffer_[1]));
    if (plausible) {
      if (buffer_.size() < kOverheadBytes + len) return std::nullopt;
      const std::vector<std::uint8_t> candidate(
          buffer_.begin(),
          buffer_.begin() + static_cast<std::ptrdiff_t>(kOverheadBytes + len));
      try {
        Frame f = DecodeFrame(candidate);
        buffer_.erase(buffer_.begin(),
                      buffer_.begin() + static_cast<std::ptrdiff_t>(candidate.size()));
        return f;
      } catch (const WireError&) {
        // fall through and resync past this sync byte
      }
    }
    buffer_.pop_front();
    ++dropped_;
  }
  return std::nullopt;
}

std::vector<std::uint8_t> HostSession::SendObservation(const WireValues& obs) {
  if (awaiting_) {
    throw WireError(WireErrorCode::kProtocol,
                    "observation sent before the previous action arrived");
  }
  auto bytes = EncodeObservation(obs, next_seq_);
  awaiting_ = true;
  return bytes;
}

WireValues HostSession::ReceiveAction(std::span<const std::uint8_t> frame) {
  if (!awaiting_) {
    throw WireError(WireErrorCode::kProtocol, "action without a pending observation");
  }
  Message m = DecodeAction(frame);
  if (m.seq != next_seq_) {
    throw WireError(WireErrorCode::kProtocol,
                    "action seq " + std::to_string(m.seq) + ", expected " +
                        std::to_string(next_seq_));
  }
  awaiting_ = false;
  ++next_seq_;
  return std::move(m.values);
}

std::vector<std::uint8_t> DeviceSession::Step(std::span<const std::uint8_t> frame,
                                              const Policy& policy) {
  const Frame f = DecodeFrame(frame);
  if (!IsObservation(f.type)) {
    throw WireError(WireErrorCode::kUnexpectedType, "device expects observations");
  }
  if (last_seq_ && f.seq != static_cast<std::uint8_t>(*last_seq_ + 1)) {
    throw WireError(WireErrorCode::kProtocol,
                    "observation seq " + std::to_string(f.seq) + " out of order");
  }
  Message obs = DecodeObservation(frame);
  last_seq_ = f.seq;
  return EncodeAction(policy(obs.values), f.seq);
}

void LoopbackChannel::HostWrite(std::span<const std::uint8_t> bytes) {
  to_device_.insert(to_device_.end(), bytes.begin(), bytes.end());
}

void LoopbackChannel::DeviceWrite(std::span<const std::uint8_t> bytes) {
  to_host_.insert(to_host_.end(), bytes.begin(), bytes.end());
}

std::vector<std::uint8_t> LoopbackChannel::DeviceReadAll() {
  std::vector<std::uint8_t> out(to_device_.begin(), to_device_.end());
  to_device_.clear();
  return out;
}

std::vector<std::uint8_t> LoopbackChannel::HostReadAll() {
  std::vector<std::uint8_t> out(to_host_.begin(), to_host_.end());
  to_host_.clear();
  return out;
}

}  // namespace tinygait::wire
