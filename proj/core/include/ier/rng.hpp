#ifndef IER_RNG_HPP
#define IER_RNG_HPP

#include <cstdint>
#include <random>

namespace ier {

/// splitmix64 mixer; used for seed derivation.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Injective per-repetition run seed derived from an experiment base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed,
                                    std::uint64_t index) {
  return splitmix64(splitmix64(base_seed) ^ splitmix64(index + 1));
}

/// Named RNG sub-streams for one run. Keeping streams separate means that
/// disabling interpolation removes its draws without shifting any other
/// stream, which is what makes baseline/IER trajectory comparisons exact.
struct RngStreams {
  std::mt19937_64 env;     // slip resolution
  std::mt19937_64 action;  // epsilon-greedy draws and tie-breaks
  std::mt19937_64 sample;  // minibatch sampling
  std::mt19937_64 interp;  // interpolation query state
  std::mt19937_64 init;    // weight initialization

  explicit RngStreams(std::uint64_t run_seed)
      : env(splitmix64(run_seed ^ 0x656e76ULL)),
        action(splitmix64(run_seed ^ 0x616374ULL)),
        sample(splitmix64(run_seed ^ 0x73616dULL)),
        interp(splitmix64(run_seed ^ 0x696e74ULL)),
        init(splitmix64(run_seed ^ 0x696e69ULL)) {}
};

}  // namespace ier

#endif
