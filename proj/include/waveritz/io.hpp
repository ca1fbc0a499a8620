#ifndef WAVERITZ_IO_HPP
#define WAVERITZ_IO_HPP

#include "waveritz/analysis.hpp"
#include "waveritz/eigensolver.hpp"
#include "waveritz/predictor.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace waveritz {

/// Format a double like printf "%.15g"; CSV output is byte-deterministic.
std::string format_g15(double v);

/// Comma-separated table with a header row, written atomically
/// (write-temp-then-rename).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    void add_row(std::vector<std::string> values);
};

void write_csv(const CsvTable& table, const std::filesystem::path& file);

/// Atomic whole-file write.
void write_text(const std::string& content, const std::filesystem::path& file);

// Versioned JSON documents.
void save_solution(const SpectralSolution& sol, const Problem& prob,
                   const std::filesystem::path& file);
SpectralSolution load_solution(const std::filesystem::path& file, const Problem& prob);

void save_prediction(const PredictionRecord& rec, const std::filesystem::path& file);
PredictionRecord load_prediction(const std::filesystem::path& file);

CsvTable energy_table_csv(const EnergyTable& table);
CsvTable scaling_csv(const ScalingFit& fit);
CsvTable prediction_csv(const PredictionRecord& rec, const std::vector<double>& averaged = {});
CsvTable error_norm_csv(const ErrorNormSeries& series);

} // namespace waveritz

#endif
