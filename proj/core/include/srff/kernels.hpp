#pragma once

// Parameter validation, analytic evaluation, Gram assembly and named presets
// for the six kernel families. A KernelSpec is the single source of truth
// shared by the analytic side and the spectral sampler.

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srff/dist.hpp"

namespace srff {

enum class Family {
    exponential_power,
    generalized_cauchy,
    generalized_matern,
    kummer,
    beta,
    tricomi,
};

enum class Mode { isotropic, tensor };

class ValidationError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct KernelSpec {
    Family family = Family::exponential_power;
    double alpha = 2.0;                  // norm exponent, required in (0, 2]
    std::optional<double> beta_param;    // shape; absent for exponential_power
    std::optional<double> gamma_param;   // second shape; kummer/beta/tricomi
    std::optional<double> lambda;        // scale; validate() fills the default
    double lengthscale = 1.0;
    std::optional<Eigen::MatrixXd> sigma;  // optional anisotropy (isotropic mode)
    std::string sigma_path;                // provenance of sigma for serialization
    Mode mode = Mode::isotropic;
};

// Default lambda per family: exponential_power, kummer, beta, tricomi use 1;
// generalized_cauchy uses 1/(2 beta); generalized_matern uses beta/2.
double default_lambda(Family family, std::optional<double> beta_param);

// Normalize and check a spec. Throws ValidationError with a message naming
// the offending field; in particular alpha outside (0, 2] is rejected.
KernelSpec validate(const KernelSpec& spec);

// Law of the mixing radius R matching the family of a validated spec.
MixtureLaw mixture_law(const KernelSpec& spec);

// Normalized kernel profile at scaled radius r >= 0, i.e. the Laplace
// transform of R evaluated at lambda * r^alpha. profile(spec, 0) == 1.
double profile(const KernelSpec& spec, double r);

// Kernel value at lag u. Isotropic mode uses r = |u/lengthscale| (or the
// sigma-weighted norm); tensor mode takes the product of univariate profiles
// over the components.
double evaluate(const KernelSpec& spec, const Eigen::VectorXd& u);

struct GramSummary {
    Eigen::MatrixXd gram;
    double min_eigenvalue = 0.0;
    int n = 0;
};

// Gram matrix of evaluate() over all point pairs (rows of `points`),
// with its smallest eigenvalue.
GramSummary gram(const KernelSpec& spec, const Eigen::MatrixXd& points);

// Symmetric PSD square root; rejects matrices with an eigenvalue below
// -1e-10 * trace and clamps the remaining negatives to zero.
Eigen::MatrixXd symmetric_sqrt_psd(const Eigen::MatrixXd& m);

std::string family_name(Family family);
std::optional<Family> family_from_name(const std::string& name);
std::string mode_name(Mode mode);
std::optional<Mode> mode_from_name(const std::string& name);

// Canonical flat key=value serialization of a validated spec, and the stable
// 64-bit FNV-1a fingerprint of that text.
std::string to_kv_text(const KernelSpec& spec);
KernelSpec from_kv_text(const std::string& text);
std::string fingerprint(const KernelSpec& spec);

struct PresetOverrides {
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> gamma;
    // generalized Cauchy: false -> table scaling 1/(2 beta), true -> lambda = 1
    bool cauchy_unit_lambda = false;
};

// Named presets: laplace, gaussian, matern(nu), power(alpha),
// student(beta) (alias rational_quadratic), generalized_cauchy(alpha,beta),
// kummer / beta / tricomi at (1.5, 1.5, 1.5). Returns nullopt for unknown
// names.
std::optional<KernelSpec> preset(const std::string& name,
                                 const PresetOverrides& over = {});
std::vector<std::pair<std::string, KernelSpec>> presets();

}  // namespace srff
