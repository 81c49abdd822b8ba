// spectral-rff command line: spectral sampling, analytic vs Monte Carlo
// kernel comparison, Gram diagnostics, and the ridge regression pipeline.
//
// Exit codes: 0 success, 2 usage or validation error, 1 runtime error.
// Error lines are prefixed with "error:".

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "srff/kernels.hpp"
#include "srff/rff.hpp"
#include "srff/spectral.hpp"

namespace {

using srff::KernelSpec;
using srff::RandomStream;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct SpecFlags {
    std::string kernel = "gaussian";
    std::optional<double> alpha, beta, gamma, lambda;
    double lengthscale = 1.0;
    std::string sigma_file;
    std::string mode = "isotropic";
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
    cmd->add_option("--kernel", f.kernel, "kernel family or preset name");
    cmd->add_option("--alpha", f.alpha, "norm exponent in (0, 2]");
    cmd->add_option("--beta", f.beta, "shape parameter beta (nu for matern)");
    cmd->add_option("--gamma", f.gamma, "shape parameter gamma");
    cmd->add_option("--lambda", f.lambda, "scale parameter lambda");
    cmd->add_option("--lengthscale", f.lengthscale, "per-input lengthscale");
    cmd->add_option("--sigma", f.sigma_file, "CSV file with a d x d anisotropy matrix");
    cmd->add_option("--mode", f.mode, "isotropic|tensor");
}

Eigen::MatrixXd read_matrix_csv(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    bool header_skipped = !skip_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error(path + ": malformed value at line " +
                                         std::to_string(line_no));
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::runtime_error(path + ": inconsistent column count at line " +
                                     std::to_string(line_no));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

KernelSpec build_spec(const SpecFlags& f) {
    KernelSpec spec;
    srff::PresetOverrides over;
    over.alpha = f.alpha;
    over.beta = f.beta;
    over.gamma = f.gamma;
    if (auto p = srff::preset(f.kernel, over)) {
        spec = *p;
    } else if (auto fam = srff::family_from_name(f.kernel)) {
        spec.family = *fam;
        spec.alpha = f.alpha.value_or(2.0);
        spec.beta_param = f.beta;
        spec.gamma_param = f.gamma;
    } else {
        throw srff::ValidationError("unknown kernel or preset: " + f.kernel);
    }
    if (f.lambda) spec.lambda = f.lambda;
    spec.lengthscale = f.lengthscale;
    const auto mode = srff::mode_from_name(f.mode);
    if (!mode) throw srff::ValidationError("mode must be isotropic or tensor");
    spec.mode = *mode;
    if (!f.sigma_file.empty()) {
        spec.sigma = read_matrix_csv(f.sigma_file, false);
        spec.sigma_path = f.sigma_file;
    }
    return srff::validate(spec);
}

struct GridFlags {
    std::string grid = "-5:5:201";
};

void parse_grid(const std::string& text, double& lo, double& hi, int& n) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw srff::ValidationError("grid must look like lo:hi:n");
    }
    try {
        lo = std::stod(text.substr(0, c1));
        hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        n = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw srff::ValidationError("grid must look like lo:hi:n");
    }
    if (!(hi > lo)) throw srff::ValidationError("grid needs hi > lo");
    if (n < 2) throw srff::ValidationError("grid resolution must be >= 2");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out.good()) throw std::runtime_error("cannot write " + path);
    return out;
}

// ---------------------------------------------------------------------------

int cmd_sample(const SpecFlags& sf, int dim, int features, std::uint64_t seed,
               const std::string& out_path) {
    const KernelSpec spec = build_spec(sf);
    RandomStream rs(seed);
    const auto pset = srff::sample_projections(rs, spec, dim, features);
    auto out = open_out(out_path);
    srff::write_projection_csv(out, pset);
    return 0;
}

int cmd_compare(const SpecFlags& sf, int dim, int features, std::uint64_t seed,
                const std::string& grid_text, const std::string& out_path) {
    if (dim != 1 && dim != 2) {
        throw srff::ValidationError("compare supports --dim 1 or 2");
    }
    const KernelSpec spec = build_spec(sf);
    double lo, hi;
    int n;
    parse_grid(grid_text, lo, hi, n);

    RandomStream rs(seed);
    const auto pset = srff::sample_projections(rs, spec, dim, features);

    std::vector<Eigen::VectorXd> grid;
    if (dim == 1) {
        grid.reserve(n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd u(1);
            u[0] = lo + (hi - lo) * i / (n - 1);
            grid.push_back(u);
        }
    } else {
        grid.reserve(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {  // row-major, u2 fastest
                Eigen::VectorXd u(2);
                u[0] = lo + (hi - lo) * i / (n - 1);
                u[1] = lo + (hi - lo) * j / (n - 1);
                grid.push_back(u);
            }
        }
    }

    const auto rep = srff::error_report(spec, pset, grid);
    auto out = open_out(out_path);
    out << (dim == 1 ? "r,K,K_M,diff" : "u1,u2,K,K_M,diff") << "\n";
    for (const auto& p : rep.points) {
        for (Eigen::Index k = 0; k < p.u.size(); ++k) out << fmt17(p.u[k]) << ',';
        out << fmt17(p.analytic) << ',' << fmt17(p.approx) << ',' << fmt17(p.diff)
            << "\n";
    }
    const std::string summary = "sup_error=" + fmt17(rep.sup_error) +
                                " rms_error=" + fmt17(rep.rms_error) +
                                " mc_band=" + fmt17(rep.mc_band);
    out << "# " << summary << "\n";
    std::cout << summary << "\n";
    return 0;
}

int cmd_gram(const SpecFlags& sf, int dim, int features, std::uint64_t seed,
             const std::string& points_file, int npoints, bool approx,
             const std::string& grid_text) {
    const KernelSpec spec = build_spec(sf);
    Eigen::MatrixXd points;
    if (!points_file.empty()) {
        points = read_matrix_csv(points_file, false);
    } else {
        double lo = -2.0, hi = 2.0;
        int unused;
        if (!grid_text.empty()) parse_grid(grid_text, lo, hi, unused);
        if (npoints < 1) throw srff::ValidationError("need at least one point");
        RandomStream rs(seed, 1);  // stream 1: points, stream 0: projections
        points.resize(npoints, dim);
        for (int i = 0; i < npoints; ++i) {
            for (int j = 0; j < dim; ++j) {
                points(i, j) = lo + (hi - lo) * rs.uniform_open();
            }
        }
    }

    std::cout << "n=" << points.rows() << "\n";
    if (!approx) {
        const auto g = srff::gram(spec, points);
        std::cout << "gram=analytic\n";
        std::cout << "min_eigenvalue=" << fmt17(g.min_eigenvalue) << "\n";
        return 0;
    }
    RandomStream rs(seed);
    const auto pset = srff::sample_projections(
        rs, spec, static_cast<int>(points.cols()), features);
    const auto fm = srff::FeatureMap::from(pset);
    const Eigen::MatrixXd z = srff::embed_rows(fm, points);
    const Eigen::MatrixXd g = z * z.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    const auto analytic = srff::gram(spec, points);
    std::cout << "gram=approximate\n";
    std::cout << "features=" << features << "\n";
    std::cout << "min_eigenvalue=" << fmt17(es.eigenvalues().minCoeff()) << "\n";
    std::cout << "max_abs_diff="
              << fmt17((g - analytic.gram).cwiseAbs().maxCoeff()) << "\n";
    return 0;
}

int cmd_fit(const SpecFlags& sf, int features, std::uint64_t seed, double ridge,
            const std::string& in_path, const std::string& out_path) {
    const KernelSpec spec = build_spec(sf);
    const Eigen::MatrixXd table = read_matrix_csv(in_path, true);
    if (table.cols() < 2) {
        throw srff::ValidationError(
            in_path + ": need d feature columns plus one target column");
    }
    const int d = static_cast<int>(table.cols()) - 1;
    const Eigen::MatrixXd x = table.leftCols(d);
    const Eigen::VectorXd y = table.col(d);

    RandomStream rs(seed);
    const auto fm =
        srff::FeatureMap::from(srff::sample_projections(rs, spec, d, features));
    auto model = srff::krr_fit(fm, x, y, ridge);
    model.spec_text = srff::to_kv_text(spec);
    auto out = open_out(out_path);
    srff::write_model(out, model);
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& in_path,
                const std::string& out_path) {
    std::ifstream min(model_path);
    if (!min.good()) throw std::runtime_error("cannot open " + model_path);
    const auto model = srff::read_model(min);

    KernelSpec spec = srff::from_kv_text(model.spec_text);
    if (!spec.sigma_path.empty()) {
        spec.sigma = read_matrix_csv(spec.sigma_path, false);
    }
    spec = srff::validate(spec);
    if (srff::fingerprint(spec) != model.fingerprint) {
        throw std::runtime_error("model fingerprint does not match its spec text");
    }

    Eigen::MatrixXd x = read_matrix_csv(in_path, true);
    if (x.cols() == model.dim + 1) {
        x = x.leftCols(model.dim).eval();  // tolerate a trailing target column
    }
    if (x.cols() != model.dim) {
        throw srff::ValidationError(in_path + ": expected " +
                                    std::to_string(model.dim) +
                                    " feature columns");
    }

    RandomStream rs(model.seed, model.stream_id);
    const auto fm = srff::FeatureMap::from(
        srff::sample_projections(rs, spec, model.dim, model.m_features));
    const Eigen::VectorXd pred = srff::krr_predict(model, fm, x);
    auto out = open_out(out_path);
    out << "prediction\n";
    for (Eigen::Index i = 0; i < pred.size(); ++i) out << fmt17(pred[i]) << "\n";
    return 0;
}

int cmd_bench(const SpecFlags& sf, int dim, int features, std::uint64_t seed) {
    KernelSpec spec = build_spec(sf);
    srff::SampleStats iso, ten;

    spec.mode = srff::Mode::isotropic;
    RandomStream rs_iso(seed);
    const auto t0 = std::chrono::steady_clock::now();
    srff::sample_projections(rs_iso, spec, dim, features, &iso);
    const auto t1 = std::chrono::steady_clock::now();

    spec.mode = srff::Mode::tensor;
    spec.sigma.reset();  // tensor mode has no anisotropy matrix
    spec.sigma_path.clear();
    RandomStream rs_ten(seed);
    srff::sample_projections(rs_ten, spec, dim, features, &ten);
    const auto t2 = std::chrono::steady_clock::now();

    const double iso_per = static_cast<double>(iso.total()) / features;
    const double ten_per = static_cast<double>(ten.total()) / features;
    std::cout << "dim=" << dim << "\n";
    std::cout << "features=" << features << "\n";
    std::cout << "isotropic_variates_per_projection=" << fmt17(iso_per) << "\n";
    std::cout << "tensor_variates_per_projection=" << fmt17(ten_per) << "\n";
    std::cout << "tensor_to_isotropic_ratio=" << fmt17(ten_per / iso_per) << "\n";

    // wall-clock throughput is inherently nondeterministic, keep it off stdout
    const double iso_s = std::chrono::duration<double>(t1 - t0).count();
    const double ten_s = std::chrono::duration<double>(t2 - t1).count();
    std::cerr << "throughput: isotropic " << fmt17(features / iso_s)
              << " projections/s, tensor " << fmt17(features / ten_s)
              << " projections/s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scale-mixture spectral sampling and random Fourier features"};
    app.require_subcommand(1);

    SpecFlags sf;
    int dim = 1;
    int features = 1000;
    std::uint64_t seed = 0;
    std::string grid = "-5:5:201";
    std::string in_path, out_path, points_file, model_path;
    int npoints = 50;
    bool approx = false;
    double ridge = 1e-4;

    auto* sample = app.add_subcommand("sample", "draw spectral projections to CSV");
    add_spec_flags(sample, sf);
    sample->add_option("--dim", dim, "input dimension");
    sample->add_option("--features", features, "number of projections M");
    sample->add_option("--seed", seed, "random seed");
    sample->add_option("--out", out_path, "output CSV")->required();

    auto* compare = app.add_subcommand(
        "compare", "analytic kernel vs its Monte Carlo approximation on a grid");
    add_spec_flags(compare, sf);
    compare->add_option("--dim", dim, "1 or 2");
    compare->add_option("--features", features, "number of projections M");
    compare->add_option("--seed", seed, "random seed");
    compare->add_option("--grid", grid, "lo:hi:n (per axis in 2D)");
    compare->add_option("--out", out_path, "output CSV")->required();

    auto* gramc = app.add_subcommand("gram", "Gram matrix diagnostics");
    add_spec_flags(gramc, sf);
    gramc->add_option("--dim", dim, "point dimension");
    gramc->add_option("--points", points_file, "CSV of points (overrides --npoints)");
    gramc->add_option("--npoints", npoints, "number of random points");
    gramc->add_option("--grid", grid, "lo:hi:n sampling box for random points");
    gramc->add_flag("--approx", approx, "use the feature-map Gram");
    gramc->add_option("--features", features, "projections M for --approx");
    gramc->add_option("--seed", seed, "random seed");

    auto* fit = app.add_subcommand("fit", "fit ridge regression on RFF features");
    add_spec_flags(fit, sf);
    fit->add_option("--features", features, "number of projections M");
    fit->add_option("--seed", seed, "random seed");
    fit->add_option("--ridge", ridge, "ridge regularization");
    fit->add_option("--in", in_path, "training CSV (header, d features + target)")
        ->required();
    fit->add_option("--out", out_path, "model file")->required();

    auto* predict = app.add_subcommand("predict", "predict with a fitted model");
    predict->add_option("--model", model_path, "model file")->required();
    predict->add_option("--in", in_path, "input CSV (header, d feature columns)")
        ->required();
    predict->add_option("--out", out_path, "predictions CSV")->required();

    auto* bench = app.add_subcommand(
        "bench", "variate counts and sampling throughput, isotropic vs tensor");
    add_spec_flags(bench, sf);
    bench->add_option("--dim", dim, "input dimension");
    bench->add_option("--features", features, "number of projections M");
    bench->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sample->parsed()) return cmd_sample(sf, dim, features, seed, out_path);
        if (compare->parsed()) {
            return cmd_compare(sf, dim, features, seed, grid, out_path);
        }
        if (gramc->parsed()) {
            return cmd_gram(sf, dim, features, seed, points_file, npoints,
                            approx, gramc->count("--grid") ? grid : "");
        }
        if (fit->parsed()) return cmd_fit(sf, features, seed, ridge, in_path, out_path);
        if (predict->parsed()) return cmd_predict(model_path, in_path, out_path);
        if (bench->parsed()) return cmd_bench(sf, dim, features, seed);
    } catch (const srff::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
