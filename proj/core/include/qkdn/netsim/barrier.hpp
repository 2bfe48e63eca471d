#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <mutex>

#include "qkdn/error.hpp"

namespace qkdn::netsim {

class Timeout : public Error {
 public:
  using Error::Error;
};

class BarrierAborted : public Error {
 public:
  using Error::Error;
};

/// Reusable rendezvous for a fixed number of participants. A participant
/// that times out withdraws its arrival, so the barrier stays usable.
class Barrier {
 public:
  explicit Barrier(std::size_t participants);

  /// Throws Timeout if the other participants do not all arrive in time.
  /// Throws BarrierAborted once abort() has been called.
  void arrive_and_wait(std::chrono::microseconds timeout);

  /// Releases current and future waiters with BarrierAborted.
  void abort();

  [[nodiscard]] std::size_t participants() const { return participants_; }

 private:
  const std::size_t participants_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t arrived_ = 0;
  std::uint64_t generation_ = 0;
  bool aborted_ = false;
};

/// Blocks until every participant of `b` has arrived.
inline void barrier(Barrier& b, std::chrono::microseconds timeout) { b.arrive_and_wait(timeout); }

}  // namespace qkdn::netsim
