#ifndef P3O_REPLAY_HPP_
#define P3O_REPLAY_HPP_

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "p3o/policy.hpp"
#include "p3o/rng.hpp"

namespace p3o {

/// One environment step with the behavior policy's full action distribution
/// attached. terminal marks a true episode end; truncated marks a horizon
/// cut (bootstrapping differs between the two). collected_return is the
/// discounted return computed at collection time, kept for the stored-return
/// update path.
struct Transition {
  std::vector<double> state;
  Action action;
  double reward = 0.0;
  std::vector<double> next_state;
  bool terminal = false;
  bool truncated = false;
  PolicySnapshot behavior;
  double collected_return = 0.0;

  bool operator==(const Transition&) const = default;
};

/// A fixed-length rollout segment; the storage unit of the replay buffer.
/// Whole segments are stored so off-policy advantages can be recomputed over
/// contiguous rewards.
using Segment = std::vector<Transition>;

/// An indexed sample of stored segments for one off-policy update.
using MiniBatch = std::vector<Segment>;

/// Bounded FIFO buffer of rollout segments. Eviction removes oldest whole
/// segments; total_stored counts every transition ever appended (the burn-in
/// gate is monotone).
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::uint64_t capacity_transitions);

  /// Stores a segment, evicting oldest segments if over capacity. Throws
  /// InputError on an empty segment, a segment larger than the capacity, or
  /// a snapshot whose stored log-prob disagrees with its distribution.
  void append(Segment segment);

  /// Uniform with-replacement sample of n_segments segments. Throws
  /// StateError when the buffer is empty.
  MiniBatch sample_minibatch(std::size_t n_segments, RngStream& rng) const;

  /// True once at least burn_in transitions have ever been stored.
  bool is_warm(std::uint64_t burn_in) const { return total_stored_ >= burn_in; }

  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t total_stored() const { return total_stored_; }
  std::uint64_t size_transitions() const { return size_transitions_; }
  std::size_t segment_count() const { return segments_.size(); }
  const Segment& segment(std::size_t i) const { return segments_[i]; }

  /// Versioned binary dump; restore round-trips the stored content exactly
  /// (categorical snapshot probabilities are floored at 1e-12 on read).
  void dump(const std::string& path) const;
  static ReplayBuffer restore(const std::string& path);

 private:
  std::uint64_t capacity_;
  std::uint64_t total_stored_ = 0;
  std::uint64_t size_transitions_ = 0;
  std::deque<Segment> segments_;
};

}  // namespace p3o

#endif  // P3O_REPLAY_HPP_
