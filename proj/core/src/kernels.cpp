#include "srff/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "srff/specfun.hpp"

namespace srff {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

}  // namespace

double default_lambda(Family family, std::optional<double> beta_param) {
    switch (family) {
        case Family::exponential_power:
        case Family::kummer:
        case Family::beta:
        case Family::tricomi:
            return 1.0;
        case Family::generalized_cauchy:
            return 1.0 / (2.0 * beta_param.value());
        case Family::generalized_matern:
            return beta_param.value() / 2.0;
    }
    throw ValidationError("unknown kernel family");
}

KernelSpec validate(const KernelSpec& spec) {
    KernelSpec out = spec;
    require(positive_finite(out.alpha) && out.alpha <= 2.0,
            "alpha must lie in the interval (0, 2]");

    const bool needs_beta = out.family != Family::exponential_power;
    const bool needs_gamma = out.family == Family::kummer ||
                             out.family == Family::beta ||
                             out.family == Family::tricomi;
    if (needs_beta) {
        require(out.beta_param.has_value(),
                family_name(out.family) + " requires a beta parameter");
        require(positive_finite(*out.beta_param), "beta must be positive");
    } else {
        require(!out.beta_param.has_value(),
                "exponential_power takes no beta parameter");
    }
    if (needs_gamma) {
        require(out.gamma_param.has_value(),
                family_name(out.family) + " requires a gamma parameter");
        require(positive_finite(*out.gamma_param), "gamma must be positive");
    } else {
        require(!out.gamma_param.has_value(),
                family_name(out.family) + " takes no gamma parameter");
    }

    if (!out.lambda) out.lambda = default_lambda(out.family, out.beta_param);
    require(positive_finite(*out.lambda), "lambda must be positive");
    require(positive_finite(out.lengthscale), "lengthscale must be positive");

    if (out.sigma) {
        require(out.mode == Mode::isotropic,
                "sigma anisotropy requires isotropic mode");
        const Eigen::MatrixXd& s = *out.sigma;
        require(s.rows() == s.cols() && s.rows() >= 1, "sigma must be square");
        const double scale = s.cwiseAbs().maxCoeff();
        require((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(scale, 1.0),
                "sigma must be symmetric");
        symmetric_sqrt_psd(s);  // throws if not positive semidefinite
    }
    return out;
}

MixtureLaw mixture_law(const KernelSpec& spec) {
    switch (spec.family) {
        case Family::exponential_power:
            return MixtureLaw::constant_one();
        case Family::generalized_cauchy:
            return MixtureLaw::gamma_law(*spec.beta_param);
        case Family::generalized_matern:
            return MixtureLaw::inverse_gamma(*spec.beta_param);
        case Family::kummer:
            return MixtureLaw::beta_law(*spec.beta_param, *spec.gamma_param);
        case Family::beta:
            return MixtureLaw::beta_exponential(*spec.beta_param, *spec.gamma_param);
        case Family::tricomi:
            return MixtureLaw::fisher_f(*spec.beta_param, *spec.gamma_param);
    }
    throw ValidationError("unknown kernel family");
}

double profile(const KernelSpec& spec, double r) {
    if (r == 0.0) return 1.0;
    const double s = *spec.lambda * std::pow(r, spec.alpha);
    if (!std::isfinite(s)) return 0.0;  // r^alpha past the double range
    switch (spec.family) {
        case Family::exponential_power:
            return std::exp(-s);
        case Family::generalized_cauchy:
            // (1 + s)^{-beta}
            return std::exp(-*spec.beta_param * std::log1p(s));
        case Family::generalized_matern: {
            // 2 / Gamma(beta) * s^{beta/2} K_beta(2 sqrt(s)); the prefactor and
            // the Bessel factor over/underflow separately, so combine in logs.
            const double b = *spec.beta_param;
            if (r < 1e-12) return 1.0;  // analytic limit of the 0 * inf form
            const double x = 2.0 * std::sqrt(s);
            const double lv = M_LN2 - std::lgamma(b) + 0.5 * b * std::log(s) +
                              specfun::log_bessel_k(b, x);
            return std::min(std::exp(lv), 1.0);
        }
        case Family::kummer: {
            const double b = *spec.beta_param, g = *spec.gamma_param;
            return specfun::kummer_m(b, b + g, -s).value;
        }
        case Family::beta: {
            const double b = *spec.beta_param, g = *spec.gamma_param;
            return std::exp(specfun::log_beta(b + s, g) - specfun::log_beta(b, g));
        }
        case Family::tricomi: {
            const double b = *spec.beta_param, g = *spec.gamma_param;
            const double lv = std::lgamma(b + g) - std::lgamma(g) +
                              specfun::log_tricomi_u(b, 1.0 - g, (g / b) * s);
            return std::min(std::exp(lv), 1.0);
        }
    }
    throw ValidationError("unknown kernel family");
}

double evaluate(const KernelSpec& spec, const Eigen::VectorXd& u) {
    if (!u.allFinite()) throw ValidationError("evaluate: lag must be finite");
    const Eigen::VectorXd v = u / spec.lengthscale;
    if (spec.mode == Mode::tensor) {
        double prod = 1.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            prod *= profile(spec, std::abs(v[i]));
        }
        return prod;
    }
    double r;
    if (spec.sigma) {
        if (spec.sigma->rows() != v.size()) {
            throw ValidationError("evaluate: sigma dimension mismatch");
        }
        r = std::sqrt(v.dot(*spec.sigma * v));
    } else {
        r = v.norm();
    }
    return profile(spec, r);
}

GramSummary gram(const KernelSpec& spec, const Eigen::MatrixXd& points) {
    const int n = static_cast<int>(points.rows());
    require(n >= 1, "gram: need at least one point");
    GramSummary out;
    out.n = n;
    out.gram.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.gram(i, i) = 1.0;
        for (int j = 0; j < i; ++j) {
            const double k = evaluate(spec, points.row(i) - points.row(j));
            out.gram(i, j) = k;
            out.gram(j, i) = k;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.gram,
                                                      Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    return out;
}

Eigen::MatrixXd symmetric_sqrt_psd(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd ev = es.eigenvalues();
    const double floor = -1e-10 * std::abs(m.trace());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < floor) {
            throw ValidationError("sigma is not positive semidefinite");
        }
        ev[i] = std::sqrt(std::max(ev[i], 0.0));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

std::string family_name(Family family) {
    switch (family) {
        case Family::exponential_power: return "exponential_power";
        case Family::generalized_cauchy: return "generalized_cauchy";
        case Family::generalized_matern: return "generalized_matern";
        case Family::kummer: return "kummer";
        case Family::beta: return "beta";
        case Family::tricomi: return "tricomi";
    }
    return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
    if (name == "exponential_power") return Family::exponential_power;
    if (name == "generalized_cauchy") return Family::generalized_cauchy;
    if (name == "generalized_matern") return Family::generalized_matern;
    if (name == "kummer") return Family::kummer;
    if (name == "beta") return Family::beta;
    if (name == "tricomi") return Family::tricomi;
    return std::nullopt;
}

std::string mode_name(Mode mode) {
    return mode == Mode::isotropic ? "isotropic" : "tensor";
}

std::optional<Mode> mode_from_name(const std::string& name) {
    if (name == "isotropic") return Mode::isotropic;
    if (name == "tensor") return Mode::tensor;
    return std::nullopt;
}

std::string to_kv_text(const KernelSpec& spec_in) {
    const KernelSpec spec = validate(spec_in);
    std::ostringstream os;
    os << "family=" << family_name(spec.family) << "\n";
    os << "alpha=" << fmt17(spec.alpha) << "\n";
    if (spec.beta_param) os << "beta=" << fmt17(*spec.beta_param) << "\n";
    if (spec.gamma_param) os << "gamma=" << fmt17(*spec.gamma_param) << "\n";
    os << "lambda=" << fmt17(*spec.lambda) << "\n";
    os << "lengthscale=" << fmt17(spec.lengthscale) << "\n";
    os << "mode=" << mode_name(spec.mode) << "\n";
    if (!spec.sigma_path.empty()) os << "sigma=" << spec.sigma_path << "\n";
    return os.str();
}

KernelSpec from_kv_text(const std::string& text) {
    KernelSpec spec;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, "kernel spec: malformed line: " + line);
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "family") {
            const auto f = family_from_name(val);
            require(f.has_value(), "kernel spec: unknown family " + val);
            spec.family = *f;
        } else if (key == "alpha") {
            spec.alpha = std::stod(val);
        } else if (key == "beta") {
            spec.beta_param = std::stod(val);
        } else if (key == "gamma") {
            spec.gamma_param = std::stod(val);
        } else if (key == "lambda") {
            spec.lambda = std::stod(val);
        } else if (key == "lengthscale") {
            spec.lengthscale = std::stod(val);
        } else if (key == "mode") {
            const auto m = mode_from_name(val);
            require(m.has_value(), "kernel spec: unknown mode " + val);
            spec.mode = *m;
        } else if (key == "sigma") {
            spec.sigma_path = val;
        } else {
            throw ValidationError("kernel spec: unknown key " + key);
        }
    }
    return spec;
}

std::string fingerprint(const KernelSpec& spec) {
    const std::string text = to_kv_text(spec);
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    for (const unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

std::optional<KernelSpec> preset(const std::string& name,
                                 const PresetOverrides& over) {
    KernelSpec spec;
    if (name == "laplace") {
        spec.family = Family::exponential_power;
        spec.alpha = 1.0;
    } else if (name == "gaussian") {
        spec.family = Family::exponential_power;
        spec.alpha = 2.0;
        spec.lambda = 0.5;
    } else if (name == "matern") {
        spec.family = Family::generalized_matern;
        spec.alpha = 2.0;
        spec.beta_param = over.beta.value_or(1.5);  // nu
    } else if (name == "power") {
        spec.family = Family::generalized_cauchy;
        spec.alpha = over.alpha.value_or(1.0);
        spec.beta_param = 1.0;
        spec.lambda = 1.0;
    } else if (name == "student" || name == "rational_quadratic") {
        spec.family = Family::generalized_cauchy;
        spec.alpha = 2.0;
        spec.beta_param = over.beta.value_or(1.0);
    } else if (name == "generalized_cauchy") {
        spec.family = Family::generalized_cauchy;
        spec.alpha = over.alpha.value_or(1.5);
        spec.beta_param = over.beta.value_or(1.5);
        if (over.cauchy_unit_lambda) spec.lambda = 1.0;
    } else if (name == "kummer" || name == "beta" || name == "tricomi") {
        spec.family = *family_from_name(name);
        spec.alpha = over.alpha.value_or(1.5);
        spec.beta_param = over.beta.value_or(1.5);
        spec.gamma_param = over.gamma.value_or(1.5);
    } else {
        return std::nullopt;
    }
    if (over.alpha) spec.alpha = *over.alpha;
    if (over.beta && name != "laplace" && name != "gaussian") {
        spec.beta_param = *over.beta;
    }
    if (over.gamma &&
        (name == "kummer" || name == "beta" || name == "tricomi")) {
        spec.gamma_param = *over.gamma;
    }
    return validate(spec);
}

std::vector<std::pair<std::string, KernelSpec>> presets() {
    std::vector<std::pair<std::string, KernelSpec>> out;
    for (const char* name :
         {"laplace", "gaussian", "matern", "power", "student",
          "rational_quadratic", "generalized_cauchy", "kummer", "beta",
          "tricomi"}) {
        out.emplace_back(name, *preset(name));
    }
    return out;
}

}  // namespace srff
