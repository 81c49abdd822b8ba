#include "srff/dist.hpp"

#include <cmath>
#include <stdexcept>

namespace srff {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
    const unsigned __int128 p =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

std::array<std::uint64_t, 4> philox_block(std::uint64_t k0, std::uint64_t k1,
                                          std::array<std::uint64_t, 4> c) {
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c[0], hi0, lo0);
        mulhilo(kPhiloxM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return c;
}

}  // namespace

void RandomStream::refill() {
    buf_ = philox_block(seed_, stream_, {block_, sub_, 0, 0});
    ++block_;
    pos_ = 0;
}

std::uint64_t RandomStream::next_u64() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
}

double RandomStream::uniform_open() {
    // 53-bit mantissa in [0,1); rejecting 0 keeps log and cos arguments finite
    for (;;) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        if (u != 0.0) return u;
    }
}

double RandomStream::normal() {
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double sample_uniform_open(RandomStream& rs) { return rs.uniform_open(); }

double sample_std_normal(RandomStream& rs) { return rs.normal(); }

double sample_gamma(RandomStream& rs, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::domain_error("sample_gamma: shape must be positive");
    }
    if (beta < 1.0) {
        const double boosted = sample_gamma(rs, beta + 1.0);
        return boosted * std::pow(rs.uniform_open(), 1.0 / beta);
    }
    const double d = beta - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rs.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rs.uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_mixture(RandomStream& rs, const MixtureLaw& law) {
    auto need = [](double p, const char* what) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw std::domain_error(std::string("sample_mixture: ") + what +
                                    " must be positive");
        }
    };
    switch (law.tag) {
        case MixtureTag::constant_one:
            return 1.0;
        case MixtureTag::gamma:
            need(law.beta, "beta");
            return sample_gamma(rs, law.beta);
        case MixtureTag::inverse_gamma:
            need(law.beta, "beta");
            return 1.0 / sample_gamma(rs, law.beta);
        case MixtureTag::beta: {
            need(law.beta, "beta");
            need(law.gamma, "gamma");
            const double gb = sample_gamma(rs, law.beta);
            const double gg = sample_gamma(rs, law.gamma);
            return gb / (gb + gg);
        }
        case MixtureTag::beta_exponential: {
            need(law.beta, "beta");
            need(law.gamma, "gamma");
            const double gb = sample_gamma(rs, law.beta);
            const double gg = sample_gamma(rs, law.gamma);
            return -std::log(gb / (gb + gg));
        }
        case MixtureTag::fisher_f: {
            need(law.beta, "beta");
            need(law.gamma, "gamma");
            const double gb = sample_gamma(rs, law.beta);
            const double gg = sample_gamma(rs, law.gamma);
            return (law.gamma * gb) / (law.beta * gg);
        }
    }
    throw std::domain_error("sample_mixture: unknown law");
}

}  // namespace srff
