// io.hpp — CSV and JSON interchange: matrix grids, Weyl tables with JSON
// sidecars, diagnostics reports, run manifests.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nwave/borg_marchenko.hpp"
#include "nwave/inverse_solver.hpp"
#include "nwave/types.hpp"

namespace nwave::io {

using json = nlohmann::json;

// Deterministic shortest-roundtrip formatting for byte-identical outputs.
std::string format_double(double v);

json complex_to_json(const Complex& c);
Complex complex_from_json(const json& j);
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// Matrix-valued grid function: header "x, Re(a_11), Im(a_11), ..." with
// entries in row-major order.
void write_matrix_grid_csv(const std::filesystem::path& path, const std::string& key_name,
                           const std::vector<double>& keys, const std::vector<Matrix>& values);

void write_potential_csv(const std::filesystem::path& path, const PotentialGrid& zeta);
PotentialGrid read_potential_csv(const std::filesystem::path& path);

// Weyl table: CSV keyed by lambda plus a JSON sidecar (same path with
// ".json" appended) holding {m, eta, M_bound, alpha} and the grid layout.
void write_weyl_table(const std::filesystem::path& csv_path, const WeylTable& table);
WeylTable read_weyl_table(const std::filesystem::path& csv_path);

json diagnostics_to_json(const InversionDiagnostics& diag);
json bm_verdict_to_json(const BmVerdict& verdict);

void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

// FNV-1a hash of a byte string, hex-encoded; used for config fingerprints.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace nwave::io
