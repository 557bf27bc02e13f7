#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "ier/replay.hpp"

using namespace ier;

namespace {

Experience real_exp(int s, int a, double r, int next) {
  return Experience{s, a, r, next, false, false};
}

Experience synth_exp(int s, int a, double r, int next) {
  return Experience{s, a, r, next, false, true};
}

}  // namespace

TEST_CASE("store_real appends and evicts FiFo") {
  InterpolatedReplay replay(2, 10, 5);
  replay.store_real(real_exp(0, 0, 0, 1));
  CHECK(replay.real_size() == 1);

  replay.store_real(real_exp(1, 0, 0, 2));
  replay.store_real(real_exp(2, 0, 0, 3));
  CHECK(replay.real_size() == 2);
  CHECK(replay.real_queue()[0].state == 1);
  CHECK(replay.real_queue()[1].state == 2);

  CHECK_THROWS_AS(replay.store_real(synth_exp(0, 0, 0, 1)),
                  std::invalid_argument);
}

TEST_CASE("ShrinkingMemory gives way to incoming real experiences") {
  InterpolatedReplay replay(10, 10, 8);
  for (int i = 0; i < 8; ++i) replay.store_synthetic(synth_exp(i, 0, 0, 0));
  CHECK(replay.synthetic_size() == 8);
  for (int i = 0; i < 3; ++i) replay.store_real(real_exp(i, 0, 0, 0));
  CHECK(replay.real_size() == 3);
  CHECK(replay.synthetic_size() == 7);
  CHECK(replay.size() == 10);
  // the oldest synthetic went first
  CHECK(replay.synthetic_queue()[0].state == 1);
}

TEST_CASE("store_synthetic respects both capacity bounds") {
  InterpolatedReplay big(100000, 100000, 20000);
  big.store_synthetic(synth_exp(0, 0, 0, 1));
  CHECK(big.synthetic_size() == 1);

  InterpolatedReplay zero(10, 10, 0);
  zero.store_synthetic(synth_exp(0, 0, 0, 1));
  CHECK(zero.synthetic_size() == 0);

  InterpolatedReplay full(5, 5, 5);
  for (int i = 0; i < 5; ++i) full.store_real(real_exp(i, 0, 0, 0));
  full.store_synthetic(synth_exp(9, 0, 0, 0));
  CHECK(full.synthetic_size() == 0);
  CHECK(full.size() == 5);

  CHECK_THROWS_AS(full.store_synthetic(real_exp(0, 0, 0, 1)),
                  std::invalid_argument);
}

TEST_CASE("sampling the full contents returns a permutation") {
  InterpolatedReplay replay(8, 16, 8);
  for (int i = 0; i < 5; ++i) replay.store_real(real_exp(i, 0, 0, 0));
  for (int i = 5; i < 8; ++i) replay.store_synthetic(synth_exp(i, 0, 0, 0));
  std::mt19937_64 rng(3);
  auto all = replay.sample(8, rng);
  REQUIRE(all.size() == 8);
  std::set<int> states;
  for (const auto& e : all) states.insert(e.state);
  CHECK(states.size() == 8);
  CHECK_THROWS_AS(replay.sample(9, rng), std::invalid_argument);
}

TEST_CASE("single draws are uniform over the union") {
  InterpolatedReplay replay(4, 8, 4);
  for (int i = 0; i < 3; ++i) replay.store_real(real_exp(0, 0, 0, 0));  // A x3
  replay.store_synthetic(synth_exp(1, 0, 0, 0));                       // B x1
  std::mt19937_64 rng(11);
  int a_hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i)
    if (replay.sample(1, rng)[0].state == 0) ++a_hits;
  CHECK(a_hits / double(n) == doctest::Approx(0.75).epsilon(0.013));
}

TEST_CASE("minibatch draws k distinct slots") {
  InterpolatedReplay replay(1000, 1000, 0);
  for (int i = 0; i < 300; ++i) replay.store_real(real_exp(i, 0, 0, 0));
  std::mt19937_64 rng(5);
  const auto batch = replay.sample(32, rng);
  std::set<int> states;
  for (const auto& e : batch) states.insert(e.state);
  CHECK(states.size() == 32);
}

TEST_CASE("dictionary accumulates counts, sums and next states") {
  TransitionDict dict;
  dict.update(real_exp(0, 1, -1.0, 8));
  const TransitionStats* st = dict.find(0, 1);
  REQUIRE(st != nullptr);
  CHECK(st->count == 1);
  CHECK(st->mean() == -1.0);
  CHECK(st->next_states == std::set<int>{8});

  dict.update(real_exp(0, 1, 0.0, 8));
  st = dict.find(0, 1);
  CHECK(st->mean() == -0.5);
  CHECK(st->next_states.size() == 1);

  CHECK_THROWS_AS(dict.update(synth_exp(0, 1, 0, 8)), std::invalid_argument);
}

TEST_CASE("lookup returns exactly the observed actions") {
  TransitionDict dict;
  CHECK(dict.lookup(5).empty());

  dict.update(real_exp(5, 2, 0.5, 6));
  const auto view = dict.lookup(5);
  REQUIRE(view.size() == 1);
  CHECK(view[0].action == 2);
  CHECK(view[0].reward_avg == 0.5);
  CHECK(*view[0].next_states == std::set<int>{6});
}

TEST_CASE("dictionary matches a brute-force scan over the full trace") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> state(0, 15);
  std::uniform_int_distribution<int> action(0, 3);
  std::uniform_real_distribution<double> reward(-1.0, 1.0);

  TransitionDict dict;
  std::vector<Experience> trace;
  for (int i = 0; i < 10000; ++i) {
    const Experience e = real_exp(state(rng), action(rng), reward(rng),
                                  state(rng));
    trace.push_back(e);
    dict.update(e);
  }

  for (int s = 0; s < 16; ++s) {
    for (const ActionView& view : dict.lookup(s)) {
      double sum = 0.0;
      long long count = 0;
      std::set<int> nexts;
      for (const Experience& e : trace) {
        if (e.state == s && e.action == view.action) {
          sum += e.reward;
          ++count;
          nexts.insert(e.next_state);
        }
      }
      REQUIRE(count > 0);
      CHECK(view.reward_avg == sum / count);
      CHECK(*view.next_states == nexts);
    }
  }
}

TEST_CASE("the dictionary never forgets evicted transitions") {
  InterpolatedReplay replay(2, 4, 2);
  TransitionDict dict;
  for (int i = 0; i < 6; ++i) {
    const Experience e = real_exp(0, 0, double(i), i);
    replay.store_real(e);
    dict.update(e);
  }
  CHECK(replay.real_size() == 2);
  const TransitionStats* st = dict.find(0, 0);
  REQUIRE(st != nullptr);
  CHECK(st->count == 6);
  CHECK(st->next_states.size() == 6);
}

TEST_CASE("randomized stress keeps every capacity invariant") {
  const std::size_t s_er = 40, s_ier = 60, s_syn = 30;
  InterpolatedReplay replay(s_er, s_ier, s_syn);
  // Reference model: plain deques with the rules applied naively.
  std::deque<Experience> ref_real, ref_syn;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 20000; ++i) {
    if (coin(rng) == 0) {
      const Experience e = real_exp(i, 0, 0, 0);
      replay.store_real(e);
      ref_real.push_back(e);
      while (ref_real.size() > s_er) ref_real.pop_front();
    } else {
      const Experience e = synth_exp(i, 0, 0, 0);
      replay.store_synthetic(e);
      ref_syn.push_back(e);
    }
    while (ref_syn.size() >
           std::min(s_syn, s_ier - std::min(ref_real.size(), s_ier)))
      ref_syn.pop_front();

    REQUIRE(replay.real_size() <= s_er);
    REQUIRE(replay.synthetic_size() <= s_syn);
    REQUIRE(replay.size() <= s_ier);
    REQUIRE(std::equal(ref_real.begin(), ref_real.end(),
                       replay.real_queue().begin(), replay.real_queue().end()));
    REQUIRE(std::equal(ref_syn.begin(), ref_syn.end(),
                       replay.synthetic_queue().begin(),
                       replay.synthetic_queue().end()));
  }
}

TEST_CASE("vanilla replay is a bounded FiFo with uniform sampling") {
  VanillaReplay replay(3);
  for (int i = 0; i < 5; ++i) replay.store_real(real_exp(i, 0, 0, 0));
  CHECK(replay.size() == 3);
  CHECK(replay.queue()[0].state == 2);
  CHECK_THROWS_AS(replay.store_synthetic(synth_exp(0, 0, 0, 0)),
                  std::logic_error);
  CHECK_THROWS_AS(replay.store_real(synth_exp(0, 0, 0, 0)),
                  std::invalid_argument);
}
