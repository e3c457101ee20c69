#include "relspin/io.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace relspin::io {

namespace c = relspin::constants;

double efield_si_to_au(double v_per_m) { return v_per_m / c::efield_au_V_per_m; }
double efield_au_to_si(double au) { return au * c::efield_au_V_per_m; }
double length_nm_to_au(double nm) { return nm * 1e-9 / c::bohr_radius_m; }
double length_au_to_nm(double au) { return au * c::bohr_radius_m * 1e9; }

// --- Config -------------------------------------------------------------------

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

Config Config::parse_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineno) +
                                                  ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }
bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
        throw std::runtime_error("config key '" + key + "': not a number: " + it->second);
    return v;
}

int Config::get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size())
        throw std::runtime_error("config key '" + key + "': not an integer: " + it->second);
    return v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

// --- CSV ------------------------------------------------------------------------

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     const std::map<std::string, std::string>& header)
    : impl_(std::make_unique<Impl>()) {
    impl_->out.open(path);
    if (!impl_->out) throw std::runtime_error("cannot open output file: " + path);
    for (const auto& [k, v] : header) impl_->out << "# " << k << " = " << v << "\n";
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    impl_->out << "# generated: " << std::ctime(&now); // ctime appends '\n'
    for (std::size_t i = 0; i < columns.size(); ++i)
        impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() = default;

void CsvWriter::row(const std::vector<double>& numeric) {
    for (std::size_t i = 0; i < numeric.size(); ++i)
        impl_->out << format_double(numeric[i]) << (i + 1 < numeric.size() ? "," : "\n");
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        impl_->out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

// --- JSON -------------------------------------------------------------------------

std::string property_report_json(const std::vector<spin_ops::PropertyReport>& reports) {
    nlohmann::json doc;
    doc["schema"] = 1;
    doc["tolerance"] = spin_ops::property_tolerance;
    doc["eigenvalue_tolerance"] = spin_ops::eigenvalue_tolerance;
    doc["columns"] = {"hermitian", "vector_under_rotations", "commutes_with_h0",
                      "su2_algebra", "eigenvalues_half"};
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json row;
        row["operator"] = spin_ops::kind_name(r.kind);
        row["hermitian"] = r.hermitian;
        row["vector_under_rotations"] = r.vector_under_rotations;
        row["commutes_with_h0"] = r.commutes_with_h0;
        row["su2_algebra"] = r.su2_algebra;
        row["eigenvalues_half"] = r.eigenvalues_half;
        row["violations"] = {
            {"hermitian", r.hermitian_violation},
            {"vector_under_rotations", r.vector_violation},
            {"commutes_with_h0", r.h0_commutator_violation},
            {"su2_algebra", r.su2_violation},
            {"eigenvalues_half", r.eigenvalue_violation},
        };
        const auto ref = spin_ops::table_reference(r.kind);
        row["matches_reference"] = (r.booleans() == ref);
        row["samples"] = r.samples;
        row["seed"] = r.seed;
        rows.push_back(row);
    }
    doc["rows"] = rows;
    return doc.dump(2);
}

std::string run_manifest_json(const laser::LaserConfig& cfg, const std::string& backend,
                              int grid_points, double dt, std::uint64_t seed,
                              const std::map<std::string, bool>& toggles) {
    nlohmann::json doc;
    doc["schema"] = 1;
    doc["laser"] = {
        {"amplitude_au", cfg.amplitude},   {"wavelength_au", cfg.wavelength},
        {"ellipticity", cfg.ellipticity},  {"total_time_au", cfg.total_time},
        {"ramp_time_au", cfg.ramp_time},   {"intensity_au", cfg.intensity()},
    };
    doc["backend"] = backend;
    doc["grid_points"] = grid_points;
    doc["dt_au"] = dt;
    doc["seed"] = seed;
    if (!toggles.empty()) doc["term_toggles"] = toggles;
    return doc.dump(2);
}

// --- binary field dump --------------------------------------------------------------

namespace {
constexpr char field_magic[8] = {'R', 'S', 'F', 'L', 'D', '0', '0', '1'};
}

void dump_field(const grid::SpinorField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open dump file: " + path);
    out.write(field_magic, sizeof(field_magic));
    const std::int32_t dim = f.spec().dim;
    const std::int32_t nc = f.ncomp();
    out.write(reinterpret_cast<const char*>(&dim), 4);
    out.write(reinterpret_cast<const char*>(&nc), 4);
    for (int a = 0; a < 3; ++a) {
        const std::int32_t n = f.spec().n[a];
        out.write(reinterpret_cast<const char*>(&n), 4);
    }
    for (int a = 0; a < 3; ++a) {
        const double b = f.spec().box[a];
        out.write(reinterpret_cast<const char*>(&b), 8);
    }
    out.write(reinterpret_cast<const char*>(f.data()),
              std::streamsize(f.points() * f.ncomp() * sizeof(Complex)));
}

grid::SpinorField load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dump file: " + path);
    char magic[8];
    in.read(magic, 8);
    if (std::memcmp(magic, field_magic, 8) != 0)
        throw std::runtime_error("bad field dump magic");
    std::int32_t dim = 0, nc = 0;
    in.read(reinterpret_cast<char*>(&dim), 4);
    in.read(reinterpret_cast<char*>(&nc), 4);
    grid::GridSpec spec;
    spec.dim = dim;
    for (int a = 0; a < 3; ++a) {
        std::int32_t n = 0;
        in.read(reinterpret_cast<char*>(&n), 4);
        spec.n[a] = n;
    }
    for (int a = 0; a < 3; ++a) in.read(reinterpret_cast<char*>(&spec.box[a]), 8);
    grid::SpinorField f(spec, nc);
    in.read(reinterpret_cast<char*>(f.data()),
            std::streamsize(f.points() * f.ncomp() * sizeof(Complex)));
    if (!in) throw std::runtime_error("truncated field dump");
    return f;
}

} // namespace relspin::io
