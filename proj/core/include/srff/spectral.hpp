#pragma once

// Sampling of the spectral distribution of each kernel family: the random
// projection eta is drawn as (lambda R)^{1/alpha} sqrt(2 A_alpha) N with R
// from the family's mixture law, A_alpha the Gaussian scale factor of the
// symmetric-stable decomposition, and N standard normal.

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "srff/dist.hpp"
#include "srff/kernels.hpp"

namespace srff {

// Gaussian scale factor A_alpha built from the Chambers-Mallows-Stuck angle
// variables: theta uniform on (-pi/2, pi/2), w standard exponential.
// Returns exactly 1 for alpha == 2 (the exponent 2/alpha - 1 vanishes and
// sin(pi/2 + theta) == cos(theta), so the formula is identically 1).
// Throws std::domain_error for alpha outside (0, 2].
double stable_factor_A(double alpha, double theta, double w);

// One draw of the d-dimensional symmetric stable vector S_alpha =
// sqrt(2 A_alpha) N, with a single A_alpha shared by all components.
Eigen::VectorXd sample_stable_vector(RandomStream& rs, double alpha, int d);

// Logical scalar-variate counters for one sampling run: one entry per normal
// component, per stable factor and per mixing radius, degenerate draws
// included (alpha = 2 or a constant radius still count as one variate each).
struct SampleStats {
    std::uint64_t normals = 0;
    std::uint64_t stable_factors = 0;
    std::uint64_t radii = 0;

    std::uint64_t total() const { return normals + stable_factors + radii; }
};

struct ProjectionSet {
    int dim = 0;
    int count = 0;
    Eigen::MatrixXd vectors;  // count x dim, row m = eta_m
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    std::string kernel_fingerprint;
    Mode mode = Mode::isotropic;
};

// Draws m_count projection rows for a validated spec. Row m always uses
// substream m + 1 of (seed, stream_id), so the result is bit-identical no
// matter how rows are partitioned across threads (SPECTRAL_RFF_THREADS caps
// the worker count). Isotropic mode consumes d + 2 logical variates per row,
// tensor mode 3 d.
ProjectionSet sample_projections(RandomStream& rs, const KernelSpec& spec,
                                 int dim, int m_count,
                                 SampleStats* stats = nullptr);

// CSV with a single metadata header line:
//   # spectral-rff v1; kernel=<fingerprint>; seed=<s>; stream=<id>; mode=<m>
// then one row of 17-significant-digit decimals per projection.
void write_projection_csv(std::ostream& os, const ProjectionSet& pset);
ProjectionSet read_projection_csv(std::istream& is);

// Worker-thread budget: hardware concurrency, capped by the
// SPECTRAL_RFF_THREADS environment variable when set.
int thread_budget();

}  // namespace srff
