#include "qkdn/netsim/barrier.hpp"

namespace qkdn::netsim {

Barrier::Barrier(std::size_t participants) : participants_(participants) {
  if (participants == 0) throw InvalidArgument("a barrier needs at least one participant");
}

void Barrier::arrive_and_wait(std::chrono::microseconds timeout) {
  std::unique_lock lock(mu_);
  if (aborted_) throw BarrierAborted("barrier aborted");
  const auto gen = generation_;
  if (++arrived_ == participants_) {
    arrived_ = 0;
    ++generation_;
    cv_.notify_all();
    return;
  }
  if (!cv_.wait_for(lock, timeout, [&] { return generation_ != gen || aborted_; })) {
    --arrived_;
    throw Timeout("barrier timed out with " + std::to_string(arrived_ + 1) + " of " +
                  std::to_string(participants_) + " participants");
  }
  if (generation_ == gen) {
    --arrived_;
    throw BarrierAborted("barrier aborted");
  }
}

void Barrier::abort() {
  std::lock_guard lock(mu_);
  aborted_ = true;
  cv_.notify_all();
}

}  // namespace qkdn::netsim
