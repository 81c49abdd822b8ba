#pragma once

// Random Fourier features: the Monte Carlo kernel estimator
// K_M(u) = (1/M) sum_m cos(eta_m . u), its cos/sin feature map
// phi(x) = sqrt(1/M) [cos(eta_m . x) ... sin(eta_m . x) ...] in R^{2M},
// approximation diagnostics, and a ridge regression pipeline on top.

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

#include "srff/spectral.hpp"

namespace srff {

struct FeatureMap {
    ProjectionSet projections;
    double scale = 0.0;  // sqrt(K(0)/M) = sqrt(1/M)

    static FeatureMap from(ProjectionSet pset);
};

// K_M at lag u; exactly 1 at u = 0 and even in u.
double approx_kernel(const ProjectionSet& pset, const Eigen::VectorXd& u);

// phi(x); the dot product of two embeddings reproduces approx_kernel of the
// lag exactly (cos(a-b) = cos a cos b + sin a sin b termwise).
Eigen::VectorXd embed(const FeatureMap& fm, const Eigen::VectorXd& x);

// row-wise embedding, N x 2M
Eigen::MatrixXd embed_rows(const FeatureMap& fm, const Eigen::MatrixXd& x);

struct ErrorPoint {
    Eigen::VectorXd u;
    double analytic = 0.0;
    double approx = 0.0;
    double diff = 0.0;
};

struct ErrorReport {
    std::vector<ErrorPoint> points;
    double sup_error = 0.0;
    double rms_error = 0.0;
    double mc_band = 0.0;  // 4 / sqrt(M)
};

ErrorReport error_report(const KernelSpec& spec, const ProjectionSet& pset,
                         const std::vector<Eigen::VectorXd>& grid);

struct RidgeModel {
    std::string spec_text;  // canonical kernel spec, kept for regeneration
    std::string fingerprint;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    int m_features = 0;
    int dim = 0;
    double ridge_lambda = 0.0;
    double y_mean = 0.0;     // target centering restored at prediction
    Eigen::VectorXd weights;  // length 2M
};

// Solves the 2M x 2M regularized normal equations by direct factorization.
// spec_text is left empty; callers that serialize the model attach the
// canonical spec text so prediction can regenerate the projections.
RidgeModel krr_fit(const FeatureMap& fm, const Eigen::MatrixXd& x,
                   const Eigen::VectorXd& y, double ridge_lambda);

Eigen::VectorXd krr_predict(const RidgeModel& model, const FeatureMap& fm,
                            const Eigen::MatrixXd& x);

// Decimal-text serialization, round-trip exact.
void write_model(std::ostream& os, const RidgeModel& model);
RidgeModel read_model(std::istream& is);

}  // namespace srff
