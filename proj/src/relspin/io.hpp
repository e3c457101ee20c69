#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relspin/grid.hpp"
#include "relspin/precession.hpp"
#include "relspin/property_check.hpp"

namespace relspin::io {

// --- SI <-> atomic-unit conversions (CLI boundary only) ----------------------

double efield_si_to_au(double v_per_m);
double efield_au_to_si(double au);
double length_nm_to_au(double nm);
double length_au_to_nm(double au);

// --- flat key=value config files ---------------------------------------------

class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// --- CSV emission -------------------------------------------------------------

// Writes '#'-prefixed header lines (sorted config echo plus one timestamp
// line), a column-name line, and rows at 12 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              const std::map<std::string, std::string>& header = {});
    ~CsvWriter();
    void row(const std::vector<double>& numeric);
    void row_mixed(const std::vector<std::string>& cells);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::string format_double(double v); // %.12g

// --- JSON property report ------------------------------------------------------

// Serializes the property reports as a table-shaped JSON document
// (schema 1: rows = operators, columns = properties + violation floats).
std::string property_report_json(const std::vector<spin_ops::PropertyReport>& reports);

// Run manifest for a propagation experiment.
std::string run_manifest_json(const laser::LaserConfig& cfg, const std::string& backend,
                              int grid_points, double dt, std::uint64_t seed,
                              const std::map<std::string, bool>& toggles);

// --- binary field snapshots -----------------------------------------------------

// Little-endian dump: magic, dims, box, offsets, interleaved complex doubles.
void dump_field(const grid::SpinorField& f, const std::string& path);
grid::SpinorField load_field(const std::string& path);

} // namespace relspin::io
