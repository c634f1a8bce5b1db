#include "nwave/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nwave::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int k = 0; k < m.rows(); ++k) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(k, j)));
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    const int rows = static_cast<int>(j.size());
    const int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
    Matrix m(rows, cols);
    for (int k = 0; k < rows; ++k)
        for (int c = 0; c < cols; ++c) m(k, c) = complex_from_json(j.at(k).at(c));
    return m;
}

namespace {

std::string matrix_header(const std::string& key_name, int m) {
    std::string h = key_name;
    for (int k = 1; k <= m; ++k)
        for (int j = 1; j <= m; ++j) {
            h += ", Re(a_" + std::to_string(k) + std::to_string(j) + ")";
            h += ", Im(a_" + std::to_string(k) + std::to_string(j) + ")";
        }
    return h;
}

std::vector<double> split_csv_line(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

}  // namespace

void write_matrix_grid_csv(const std::filesystem::path& path, const std::string& key_name,
                           const std::vector<double>& keys, const std::vector<Matrix>& values) {
    if (keys.size() != values.size()) throw InvalidInput("write_matrix_grid_csv: size mismatch");
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path.string());
    const int m = values.empty() ? 0 : static_cast<int>(values.front().rows());
    out << matrix_header(key_name, m) << "\n";
    for (size_t i = 0; i < keys.size(); ++i) {
        out << format_double(keys[i]);
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j)
                out << ", " << format_double(values[i](k, j).real()) << ", "
                    << format_double(values[i](k, j).imag());
        out << "\n";
    }
}

void write_potential_csv(const std::filesystem::path& path, const PotentialGrid& zeta) {
    std::vector<double> xs;
    xs.reserve(zeta.values.size());
    for (int i = 0; i < zeta.nodes(); ++i) xs.push_back(zeta.x(i));
    write_matrix_grid_csv(path, "x", xs, zeta.values);
}

namespace {

void read_matrix_grid_csv(const std::filesystem::path& path, std::vector<double>& keys,
                          std::vector<Matrix>& values) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("empty CSV: " + path.string());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto nums = split_csv_line(line);
        const int m = static_cast<int>(std::lround(std::sqrt((nums.size() - 1) / 2.0)));
        if (static_cast<size_t>(2 * m * m + 1) != nums.size())
            throw InvalidInput("malformed CSV row in " + path.string());
        keys.push_back(nums[0]);
        Matrix v(m, m);
        size_t p = 1;
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j) {
                v(k, j) = Complex(nums[p], nums[p + 1]);
                p += 2;
            }
        values.push_back(v);
    }
}

}  // namespace

PotentialGrid read_potential_csv(const std::filesystem::path& path) {
    std::vector<double> xs;
    PotentialGrid g;
    read_matrix_grid_csv(path, xs, g.values);
    if (xs.size() < 2) throw InvalidInput("potential CSV needs at least 2 nodes");
    g.length = xs.back();
    return g;
}

void write_weyl_table(const std::filesystem::path& csv_path, const WeylTable& table) {
    std::vector<double> lambdas;
    lambdas.reserve(table.phi.size());
    for (int j = 0; j < table.count(); ++j) lambdas.push_back(table.line.lambda(j));
    write_matrix_grid_csv(csv_path, "lambda", lambdas, table.phi);

    json sidecar;
    sidecar["m"] = table.m();
    sidecar["eta"] = table.line.eta;
    sidecar["M_bound"] = table.line.m_bound;
    sidecar["alpha"] = matrix_to_json(table.alpha);
    sidecar["half_width"] = table.line.half_width;
    sidecar["delta_lambda"] = table.line.delta;
    sidecar["source"] = to_string(table.source);
    write_json(csv_path.string() + ".json", sidecar);
}

WeylTable read_weyl_table(const std::filesystem::path& csv_path) {
    const json sidecar = read_json(csv_path.string() + ".json");
    WeylTable t;
    t.line = SpectralLine::make(sidecar.at("eta").get<double>(),
                                sidecar.at("half_width").get<double>(),
                                sidecar.at("delta_lambda").get<double>(),
                                sidecar.at("M_bound").get<double>());
    t.alpha = matrix_from_json(sidecar.at("alpha"));
    const std::string src = sidecar.value("source", "closed-form");
    t.source = src == "integral-equation" ? WeylSource::IntegralEquation
               : src == "transformed"     ? WeylSource::Transformed
               : src == "evolved"         ? WeylSource::Evolved
                                          : WeylSource::ClosedForm;
    std::vector<double> lambdas;
    read_matrix_grid_csv(csv_path, lambdas, t.phi);
    if (static_cast<int>(lambdas.size()) != t.line.count())
        throw InvalidInput("Weyl CSV row count does not match the sidecar grid");
    return t;
}

json diagnostics_to_json(const InversionDiagnostics& diag) {
    json j;
    j["min_eig_S"] = diag.min_eig_S;
    j["as_identity_residual"] = diag.as_identity_residual;
    j["alpha"] = matrix_to_json(diag.alpha);
    j["alpha_hat"] = matrix_to_json(diag.alpha_hat);
    j["max_recovery_defect"] = diag.max_recovery_defect;
    j["kernel_hermitian_defect"] = diag.kernel_hermitian_defect;
    if (diag.k_residuals) {
        j["k_residuals"] = {{"unitarity", diag.k_residuals->unitarity_defect},
                            {"endpoint_identity", diag.k_residuals->first_identity},
                            {"derivative_identity", diag.k_residuals->second_identity}};
    }
    return j;
}

json bm_verdict_to_json(const BmVerdict& v) {
    json j;
    j["ray_slope"] = v.ray_slope;
    j["F_sup"] = v.f_sup;
    j["pi_gap"] = v.pi_gap;
    j["zeta_gap"] = v.zeta_gap ? json(*v.zeta_gap) : json();
    j["verdict"] = v.outcome == BmOutcome::Same ? "SAME" : "DIFFERENT";
    j["advisory"] = v.advisory;
    return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open for reading: " + path.string());
    json j;
    in >> j;
    return j;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace nwave::io
