#include "srff/rff.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace srff {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_dim(const ProjectionSet& pset, Eigen::Index d, const char* where) {
    if (pset.dim != d) {
        throw ValidationError(std::string(where) + ": dimension mismatch");
    }
}

}  // namespace

FeatureMap FeatureMap::from(ProjectionSet pset) {
    FeatureMap fm;
    fm.scale = 1.0 / std::sqrt(static_cast<double>(pset.count));
    fm.projections = std::move(pset);
    return fm;
}

double approx_kernel(const ProjectionSet& pset, const Eigen::VectorXd& u) {
    check_dim(pset, u.size(), "approx_kernel");
    return (pset.vectors * u).array().cos().mean();
}

Eigen::VectorXd embed(const FeatureMap& fm, const Eigen::VectorXd& x) {
    check_dim(fm.projections, x.size(), "embed");
    const Eigen::VectorXd t = fm.projections.vectors * x;
    const int m = fm.projections.count;
    Eigen::VectorXd phi(2 * m);
    phi.head(m) = t.array().cos() * fm.scale;
    phi.tail(m) = t.array().sin() * fm.scale;
    return phi;
}

Eigen::MatrixXd embed_rows(const FeatureMap& fm, const Eigen::MatrixXd& x) {
    check_dim(fm.projections, x.cols(), "embed_rows");
    const int m = fm.projections.count;
    Eigen::MatrixXd t = x * fm.projections.vectors.transpose();  // N x M
    Eigen::MatrixXd z(x.rows(), 2 * m);
    z.leftCols(m) = t.array().cos() * fm.scale;
    z.rightCols(m) = t.array().sin() * fm.scale;
    return z;
}

ErrorReport error_report(const KernelSpec& spec_in, const ProjectionSet& pset,
                         const std::vector<Eigen::VectorXd>& grid) {
    const KernelSpec spec = validate(spec_in);
    ErrorReport rep;
    rep.mc_band = 4.0 / std::sqrt(static_cast<double>(pset.count));
    rep.points.reserve(grid.size());
    double sq_sum = 0.0;
    for (const auto& u : grid) {
        ErrorPoint p;
        p.u = u;
        p.analytic = evaluate(spec, u);
        p.approx = approx_kernel(pset, u);
        p.diff = p.approx - p.analytic;
        rep.sup_error = std::max(rep.sup_error, std::abs(p.diff));
        sq_sum += p.diff * p.diff;
        rep.points.push_back(std::move(p));
    }
    if (!rep.points.empty()) {
        rep.rms_error = std::sqrt(sq_sum / static_cast<double>(rep.points.size()));
    }
    return rep;
}

RidgeModel krr_fit(const FeatureMap& fm, const Eigen::MatrixXd& x,
                   const Eigen::VectorXd& y, double ridge_lambda) {
    if (x.rows() < 1) throw ValidationError("krr_fit: need at least one row");
    if (x.rows() != y.size()) throw ValidationError("krr_fit: X/y size mismatch");
    if (!(ridge_lambda > 0.0)) {
        throw ValidationError("krr_fit: ridge lambda must be positive");
    }
    const Eigen::MatrixXd z = embed_rows(fm, x);
    const double y_mean = y.mean();
    const Eigen::VectorXd yc = y.array() - y_mean;

    Eigen::MatrixXd normal = z.transpose() * z;
    normal.diagonal().array() += ridge_lambda;
    const Eigen::VectorXd w = normal.ldlt().solve(z.transpose() * yc);

    RidgeModel model;
    model.fingerprint = fm.projections.kernel_fingerprint;
    model.seed = fm.projections.seed;
    model.stream_id = fm.projections.stream_id;
    model.m_features = fm.projections.count;
    model.dim = fm.projections.dim;
    model.ridge_lambda = ridge_lambda;
    model.y_mean = y_mean;
    model.weights = w;
    return model;
}

Eigen::VectorXd krr_predict(const RidgeModel& model, const FeatureMap& fm,
                            const Eigen::MatrixXd& x) {
    if (fm.projections.count != model.m_features ||
        fm.projections.dim != model.dim) {
        throw ValidationError("krr_predict: feature map does not match model");
    }
    const Eigen::MatrixXd z = embed_rows(fm, x);
    return (z * model.weights).array() + model.y_mean;
}

void write_model(std::ostream& os, const RidgeModel& model) {
    os << "# spectral-rff model v1\n";
    os << "fingerprint=" << model.fingerprint << "\n";
    os << "seed=" << model.seed << "\n";
    os << "stream=" << model.stream_id << "\n";
    os << "features=" << model.m_features << "\n";
    os << "dim=" << model.dim << "\n";
    os << "ridge=" << fmt17(model.ridge_lambda) << "\n";
    os << "y_mean=" << fmt17(model.y_mean) << "\n";
    os << "spec_begin\n" << model.spec_text << "spec_end\n";
    os << "weights=" << model.weights.size() << "\n";
    for (Eigen::Index i = 0; i < model.weights.size(); ++i) {
        os << fmt17(model.weights[i]) << "\n";
    }
}

RidgeModel read_model(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "# spectral-rff model v1") {
        throw std::runtime_error("model file: missing header");
    }
    RidgeModel model;
    Eigen::Index n_weights = -1;
    while (std::getline(is, line)) {
        if (line == "spec_begin") {
            std::ostringstream spec;
            while (std::getline(is, line) && line != "spec_end") {
                spec << line << "\n";
            }
            model.spec_text = spec.str();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("model file: malformed line: " + line);
        }
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "fingerprint") {
            model.fingerprint = val;
        } else if (key == "seed") {
            model.seed = std::stoull(val);
        } else if (key == "stream") {
            model.stream_id = std::stoull(val);
        } else if (key == "features") {
            model.m_features = std::stoi(val);
        } else if (key == "dim") {
            model.dim = std::stoi(val);
        } else if (key == "ridge") {
            model.ridge_lambda = std::stod(val);
        } else if (key == "y_mean") {
            model.y_mean = std::stod(val);
        } else if (key == "weights") {
            n_weights = std::stoll(val);
            model.weights.resize(n_weights);
            for (Eigen::Index i = 0; i < n_weights; ++i) {
                if (!std::getline(is, line)) {
                    throw std::runtime_error("model file: truncated weights");
                }
                model.weights[i] = std::stod(line);
            }
        } else {
            throw std::runtime_error("model file: unknown key " + key);
        }
    }
    if (n_weights < 0) throw std::runtime_error("model file: missing weights");
    return model;
}

}  // namespace srff
