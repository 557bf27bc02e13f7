#ifndef IER_REPLAY_HPP
#define IER_REPLAY_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace ier {

/// One transition. `synthetic` marks reward-averaged samples.
struct Experience {
  int state = 0;
  int action = 0;
  double reward = 0.0;
  int next_state = 0;
  bool terminal = false;
  bool synthetic = false;

  friend bool operator==(const Experience&, const Experience&) = default;
};

/// Classic single-queue experience replay: bounded FiFo, uniform sampling.
class VanillaReplay {
 public:
  explicit VanillaReplay(std::size_t capacity) : capacity_(capacity) {}

  void store_real(const Experience& e);
  void store_synthetic(const Experience&) {
    throw std::logic_error("vanilla replay holds real experiences only");
  }

  std::size_t size() const { return queue_.size(); }
  std::size_t real_size() const { return queue_.size(); }
  std::size_t synthetic_size() const { return 0; }

  std::vector<Experience> sample(std::size_t k, std::mt19937_64& rng) const;

  const std::deque<Experience>& queue() const { return queue_; }

 private:
  std::size_t capacity_;
  std::deque<Experience> queue_;
};

/// Dual-queue replay: a FiFo of real experiences (capacity s_er) plus a
/// ShrinkingMemory of synthetic ones. The synthetic queue's effective
/// capacity is min(s_synthetic, s_ier - real count), so it shrinks as real
/// experiences accumulate and the combined store stays within s_ier.
class InterpolatedReplay {
 public:
  InterpolatedReplay(std::size_t s_er, std::size_t s_ier,
                     std::size_t s_synthetic);

  void store_real(const Experience& e);
  void store_synthetic(const Experience& e);

  std::size_t size() const { return real_.size() + synthetic_.size(); }
  std::size_t real_size() const { return real_.size(); }
  std::size_t synthetic_size() const { return synthetic_.size(); }

  std::size_t real_capacity() const { return s_er_; }
  std::size_t total_capacity() const { return s_ier_; }
  std::size_t synthetic_capacity() const { return s_synthetic_; }

  /// k distinct items uniform over the union of both queues.
  std::vector<Experience> sample(std::size_t k, std::mt19937_64& rng) const;

  const std::deque<Experience>& real_queue() const { return real_; }
  const std::deque<Experience>& synthetic_queue() const { return synthetic_; }

 private:
  void shrink_synthetic();

  std::size_t s_er_;
  std::size_t s_ier_;
  std::size_t s_synthetic_;
  std::deque<Experience> real_;
  std::deque<Experience> synthetic_;
};

/// Running statistics for one (state, action) key.
struct TransitionStats {
  long long count = 0;
  double reward_sum = 0.0;
  std::set<int> next_states;

  double mean() const { return reward_sum / static_cast<double>(count); }
};

struct ActionView {
  int action = 0;
  double reward_avg = 0.0;
  const std::set<int>* next_states = nullptr;
};

/// Cumulative per-(s,a) statistics over every real transition ever seen.
/// Decoupled from queue eviction: the dictionary never forgets.
class TransitionDict {
 public:
  /// Folds a real transition into the running statistics. Synthetic input
  /// is a usage error.
  void update(const Experience& e);

  /// Statistics for (s,a), or nullptr if never observed.
  const TransitionStats* find(int s, int a) const;

  /// Observed actions at `s` with their running reward average and the set
  /// of distinct next states. Empty for unseen states.
  std::vector<ActionView> lookup(int s) const;

  std::size_t size() const { return entries_.size(); }

 private:
  static std::uint64_t key(int s, int a) {
    return static_cast<std::uint64_t>(s) * kMaxActions +
           static_cast<std::uint64_t>(a);
  }
  static constexpr int kMaxActions = 4;

  std::unordered_map<std::uint64_t, TransitionStats> entries_;
};

}  // namespace ier

#endif
