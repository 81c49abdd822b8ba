#pragma once

// Seedable base variate generators. A RandomStream is single-owner mutable
// state; independence across (stream_id, substream) pairs is the parallelism
// mechanism, so parallel code partitions work by stream rather than sharing
// one generator.

#include <array>
#include <cstdint>

namespace srff {

// Counter-based generator (Philox-style 4x64 bijection, 10 rounds). The key
// holds (seed, stream_id) and the 256-bit counter holds (block, substream),
// so identical (seed, stream_id) replays the same sequence, distinct ids
// never overlap, and substreams can be handed out without coordination.
// The raw 64-bit outputs are integer-exact across platforms; variates that
// go through libm (log/cos in the transforms below) match to rounding.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0,
                          std::uint64_t substream = 0)
        : seed_(seed), stream_(stream_id), sub_(substream) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    // fresh stream for a work partition (e.g. one per projection row)
    RandomStream substream(std::uint64_t index) const {
        return RandomStream(seed_, stream_, index);
    }

    std::uint64_t next_u64();
    double uniform_open();  // strictly inside (0,1)
    double normal();        // standard normal, Box-Muller transform

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t sub_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 4> buf_{};
    int pos_ = 4;
};

enum class MixtureTag {
    constant_one,
    gamma,
    inverse_gamma,
    beta,
    beta_exponential,
    fisher_f,
};

// Law of the nonnegative mixing radius R. All shape parameters must be
// strictly positive.
struct MixtureLaw {
    MixtureTag tag = MixtureTag::constant_one;
    double beta = 0.0;
    double gamma = 0.0;

    static MixtureLaw constant_one() { return {MixtureTag::constant_one, 0, 0}; }
    static MixtureLaw gamma_law(double b) { return {MixtureTag::gamma, b, 0}; }
    static MixtureLaw inverse_gamma(double b) { return {MixtureTag::inverse_gamma, b, 0}; }
    static MixtureLaw beta_law(double b, double g) { return {MixtureTag::beta, b, g}; }
    static MixtureLaw beta_exponential(double b, double g) {
        return {MixtureTag::beta_exponential, b, g};
    }
    static MixtureLaw fisher_f(double b, double g) { return {MixtureTag::fisher_f, b, g}; }
};

double sample_uniform_open(RandomStream& rs);
double sample_std_normal(RandomStream& rs);

// Gamma(beta, 1) variate for any beta > 0: Marsaglia-Tsang (2000)
// squeeze-rejection, with the boost G_beta = G_{beta+1} U^{1/beta} below
// shape 1. Throws std::domain_error for beta <= 0.
double sample_gamma(RandomStream& rs, double beta);

// One draw of R under the given law:
//   constant_one     -> 1
//   gamma            -> G_beta
//   inverse_gamma    -> 1 / G_beta
//   beta             -> G_beta / (G_beta + G_gamma)
//   beta_exponential -> -log(Beta(beta, gamma) draw)
//   fisher_f         -> (gamma G_beta) / (beta G_gamma)
double sample_mixture(RandomStream& rs, const MixtureLaw& law);

}  // namespace srff
