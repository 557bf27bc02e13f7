#include "ier/replay.hpp"

#include <algorithm>
#include <unordered_set>

namespace ier {

namespace {

// Floyd's algorithm: k distinct indices uniform over [0, n).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                        std::mt19937_64& rng) {
  std::vector<std::size_t> picked;
  picked.reserve(k);
  std::unordered_set<std::size_t> seen;
  for (std::size_t i = n - k; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> dist(0, i);
    const std::size_t j = dist(rng);
    if (seen.insert(j).second) {
      picked.push_back(j);
    } else {
      seen.insert(i);
      picked.push_back(i);
    }
  }
  return picked;
}

}  // namespace

void VanillaReplay::store_real(const Experience& e) {
  if (e.synthetic)
    throw std::invalid_argument("store_real called with synthetic experience");
  queue_.push_back(e);
  while (queue_.size() > capacity_) queue_.pop_front();
}

std::vector<Experience> VanillaReplay::sample(std::size_t k,
                                              std::mt19937_64& rng) const {
  if (k > queue_.size())
    throw std::invalid_argument("sample larger than stored contents");
  std::vector<Experience> out;
  out.reserve(k);
  for (std::size_t idx : sample_indices(queue_.size(), k, rng))
    out.push_back(queue_[idx]);
  return out;
}

InterpolatedReplay::InterpolatedReplay(std::size_t s_er, std::size_t s_ier,
                                       std::size_t s_synthetic)
    : s_er_(s_er), s_ier_(s_ier), s_synthetic_(s_synthetic) {
  if (s_er_ > s_ier_)
    throw std::invalid_argument("real capacity s_er exceeds total s_ier");
}

void InterpolatedReplay::shrink_synthetic() {
  const std::size_t room = s_ier_ - std::min(real_.size(), s_ier_);
  const std::size_t cap = std::min(s_synthetic_, room);
  while (synthetic_.size() > cap) synthetic_.pop_front();
}

void InterpolatedReplay::store_real(const Experience& e) {
  if (e.synthetic)
    throw std::invalid_argument("store_real called with synthetic experience");
  real_.push_back(e);
  while (real_.size() > s_er_) real_.pop_front();
  shrink_synthetic();
}

void InterpolatedReplay::store_synthetic(const Experience& e) {
  if (!e.synthetic)
    throw std::invalid_argument("store_synthetic called with real experience");
  synthetic_.push_back(e);
  shrink_synthetic();
}

std::vector<Experience> InterpolatedReplay::sample(std::size_t k,
                                                   std::mt19937_64& rng) const {
  const std::size_t n = size();
  if (k > n) throw std::invalid_argument("sample larger than stored contents");
  std::vector<Experience> out;
  out.reserve(k);
  for (std::size_t idx : sample_indices(n, k, rng)) {
    out.push_back(idx < real_.size() ? real_[idx]
                                     : synthetic_[idx - real_.size()]);
  }
  return out;
}

void TransitionDict::update(const Experience& e) {
  if (e.synthetic)
    throw std::invalid_argument("dictionary tracks real transitions only");
  TransitionStats& st = entries_[key(e.state, e.action)];
  st.count += 1;
  st.reward_sum += e.reward;
  st.next_states.insert(e.next_state);
}

const TransitionStats* TransitionDict::find(int s, int a) const {
  const auto it = entries_.find(key(s, a));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<ActionView> TransitionDict::lookup(int s) const {
  std::vector<ActionView> out;
  for (int a = 0; a < kMaxActions; ++a) {
    if (const TransitionStats* st = find(s, a)) {
      out.push_back(ActionView{a, st->mean(), &st->next_states});
    }
  }
  return out;
}

}  // namespace ier
