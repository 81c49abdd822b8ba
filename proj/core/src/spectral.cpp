#include "srff/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace srff {

double stable_factor_A(double alpha, double theta, double w) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw std::domain_error("stable_factor_A: alpha must lie in (0, 2]");
    }
    if (alpha == 2.0) return 1.0;
    const double half = 0.5 * alpha;
    const double quarter = 0.25 * M_PI * alpha;
    const double num = std::sin(quarter + half * theta);
    const double den = std::pow(std::cos(theta), 2.0 / alpha);
    const double tail = std::cos(quarter + (half - 1.0) * theta) / w;
    return num / den * std::pow(tail, 2.0 / alpha - 1.0);
}

namespace {

// one stable factor from the stream: W = -log(U1), Theta = pi (U2 - 1/2)
double draw_stable_factor(RandomStream& rs, double alpha) {
    if (alpha == 2.0) return 1.0;  // no entropy consumed
    const double w = -std::log(rs.uniform_open());
    const double theta = M_PI * (rs.uniform_open() - 0.5);
    return stable_factor_A(alpha, theta, w);
}

double draw_radius(RandomStream& rs, const MixtureLaw& law) {
    return sample_mixture(rs, law);
}

// scale multiplying the unit normal: (lambda R)^{1/alpha} sqrt(2 A)
double projection_scale(double lambda, double r, double a, double alpha) {
    if (alpha == 2.0) return std::sqrt(2.0 * lambda * r * a);
    return std::pow(lambda * r, 1.0 / alpha) * std::sqrt(2.0 * a);
}

}  // namespace

Eigen::VectorXd sample_stable_vector(RandomStream& rs, double alpha, int d) {
    if (d < 1) throw std::domain_error("sample_stable_vector: d must be >= 1");
    const double a = draw_stable_factor(rs, alpha);
    const double scale = std::sqrt(2.0 * a);
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = scale * rs.normal();
    return v;
}

int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("SPECTRAL_RFF_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

ProjectionSet sample_projections(RandomStream& rs, const KernelSpec& spec_in,
                                 int dim, int m_count, SampleStats* stats) {
    const KernelSpec spec = validate(spec_in);
    if (dim < 1) throw ValidationError("sample_projections: dim must be >= 1");
    if (m_count < 1) throw ValidationError("sample_projections: count must be >= 1");

    const MixtureLaw law = mixture_law(spec);
    const double lambda = *spec.lambda;
    const double alpha = spec.alpha;
    const double inv_lengthscale = 1.0 / spec.lengthscale;

    Eigen::MatrixXd sqrt_sigma;
    const bool has_sigma = spec.sigma.has_value();
    if (has_sigma) {
        if (spec.sigma->rows() != dim) {
            throw ValidationError("sample_projections: sigma dimension mismatch");
        }
        sqrt_sigma = symmetric_sqrt_psd(*spec.sigma);
    }

    ProjectionSet out;
    out.dim = dim;
    out.count = m_count;
    out.vectors.resize(m_count, dim);
    out.seed = rs.seed();
    out.stream_id = rs.stream_id();
    out.kernel_fingerprint = fingerprint(spec);
    out.mode = spec.mode;

    const bool tensor = spec.mode == Mode::tensor;

    auto sample_rows = [&](int lo, int hi, SampleStats& st) {
        for (int m = lo; m < hi; ++m) {
            RandomStream row = rs.substream(static_cast<std::uint64_t>(m) + 1);
            if (tensor) {
                for (int l = 0; l < dim; ++l) {
                    const double r = draw_radius(row, law);
                    const double a = draw_stable_factor(row, alpha);
                    const double scale = projection_scale(lambda, r, a, alpha);
                    out.vectors(m, l) = scale * row.normal();
                }
                st.radii += dim;
                st.stable_factors += dim;
                st.normals += dim;
            } else {
                const double r = draw_radius(row, law);
                const double a = draw_stable_factor(row, alpha);
                const double scale = projection_scale(lambda, r, a, alpha);
                for (int l = 0; l < dim; ++l) {
                    out.vectors(m, l) = scale * row.normal();
                }
                st.radii += 1;
                st.stable_factors += 1;
                st.normals += dim;
            }
            if (has_sigma) {
                out.vectors.row(m) = out.vectors.row(m) * sqrt_sigma;
            }
            if (inv_lengthscale != 1.0) out.vectors.row(m) *= inv_lengthscale;
        }
    };

    SampleStats total;
    const int workers = std::min(thread_budget(), std::max(1, m_count / 2048));
    if (workers <= 1) {
        sample_rows(0, m_count, total);
    } else {
        std::vector<std::thread> pool;
        std::vector<SampleStats> parts(workers);
        const int chunk = (m_count + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int lo = w * chunk;
            const int hi = std::min(m_count, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(sample_rows, lo, hi, std::ref(parts[w]));
        }
        for (auto& t : pool) t.join();
        for (const auto& p : parts) {
            total.normals += p.normals;
            total.stable_factors += p.stable_factors;
            total.radii += p.radii;
        }
    }
    if (stats) *stats = total;

    if (!out.vectors.allFinite()) {
        throw std::runtime_error("sample_projections: non-finite projection");
    }
    return out;
}

void write_projection_csv(std::ostream& os, const ProjectionSet& pset) {
    os << "# spectral-rff v1; kernel=" << pset.kernel_fingerprint
       << "; seed=" << pset.seed << "; stream=" << pset.stream_id
       << "; mode=" << mode_name(pset.mode) << "\n";
    char buf[64];
    for (int m = 0; m < pset.count; ++m) {
        for (int l = 0; l < pset.dim; ++l) {
            std::snprintf(buf, sizeof(buf), "%.17g", pset.vectors(m, l));
            if (l) os << ',';
            os << buf;
        }
        os << '\n';
    }
}

ProjectionSet read_projection_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# spectral-rff v1;", 0) != 0) {
        throw std::runtime_error("projection csv: missing header");
    }
    ProjectionSet out;
    auto grab = [&line](const std::string& key) -> std::string {
        const auto pos = line.find(key + "=");
        if (pos == std::string::npos) {
            throw std::runtime_error("projection csv: header missing " + key);
        }
        const auto start = pos + key.size() + 1;
        auto end = line.find(';', start);
        if (end == std::string::npos) end = line.size();
        return line.substr(start, end - start);
    };
    out.kernel_fingerprint = grab("kernel");
    out.seed = std::stoull(grab("seed"));
    out.stream_id = std::stoull(grab("stream"));
    const auto mode = mode_from_name(grab("mode"));
    if (!mode) throw std::runtime_error("projection csv: bad mode");
    out.mode = *mode;

    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::runtime_error("projection csv: ragged rows");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("projection csv: no data rows");
    out.count = static_cast<int>(rows.size());
    out.dim = static_cast<int>(rows.front().size());
    out.vectors.resize(out.count, out.dim);
    for (int m = 0; m < out.count; ++m) {
        for (int l = 0; l < out.dim; ++l) out.vectors(m, l) = rows[m][l];
    }
    return out;
}

}  // namespace srff
