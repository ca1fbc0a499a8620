#include "waveritz/io.hpp"
#include "waveritz/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace waveritz {

using nlohmann::json;

std::string format_g15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> r;
    r.reserve(values.size());
    for (double v : values) r.push_back(format_g15(v));
    rows.push_back(std::move(r));
}

void CsvTable::add_row(std::vector<std::string> values) { rows.push_back(std::move(values)); }

void write_text(const std::string& content, const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw FormatError("cannot write " + file.string());
    out << content;
    out.close();
    if (!out) throw FormatError("write failed for " + file.string());
    std::filesystem::rename(tmp, file);
}

void write_csv(const CsvTable& table, const std::filesystem::path& file) {
    std::ostringstream os;
    for (size_t i = 0; i < table.header.size(); ++i)
        os << (i ? "," : "") << table.header[i];
    os << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    write_text(os.str(), file);
}

namespace {

json layout_json(const BasisLayout& l) {
    return json{{"top_level", l.top_level},
                {"half_width", l.half_width},
                {"support", l.support}};
}

void require_format(const json& j, const std::string& tag) {
    if (!j.contains("format") || j["format"] != tag)
        throw FormatError("expected a '" + tag + "' document");
}

json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw FormatError("cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FormatError("malformed JSON in " + file.string() + ": " + e.what());
    }
    return j;
}

} // namespace

void save_solution(const SpectralSolution& sol, const Problem& prob,
                   const std::filesystem::path& file) {
    json j;
    j["format"] = "waveritz-solution";
    j["version"] = 1;
    j["level"] = sol.level;
    j["genus"] = prob.fb.genus;
    j["omega"] = prob.model.omega;
    j["layout"] = layout_json(sol.layout);
    j["n_states"] = sol.n_states;
    j["eigenvalues"] = sol.eigenvalues;
    j["residual_norms"] = sol.residual_norms;
    json vecs = json::array();
    for (int s = 0; s < sol.n_states; ++s) {
        std::vector<double> col(sol.vectors_multilevel.col(s).data(),
                                sol.vectors_multilevel.col(s).data() + sol.vectors_multilevel.rows());
        vecs.push_back(col);
    }
    j["vectors_multilevel"] = vecs;
    write_text(j.dump(1), file);
}

SpectralSolution load_solution(const std::filesystem::path& file, const Problem& prob) {
    json j = load_json(file);
    require_format(j, "waveritz-solution");
    SpectralSolution sol;
    sol.level = j.at("level");
    sol.layout = make_layout(j.at("layout").at("top_level"), j.at("layout").at("half_width"),
                             j.at("layout").at("support"));
    sol.n_states = j.at("n_states");
    sol.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    sol.residual_norms = j.at("residual_norms").get<std::vector<double>>();
    const auto& vecs = j.at("vectors_multilevel");
    sol.vectors_multilevel.resize(sol.layout.multilevel_dim(), sol.n_states);
    sol.vectors_single.resize(sol.layout.single_dim(), sol.n_states);
    for (int s = 0; s < sol.n_states; ++s) {
        std::vector<double> col = vecs.at(s).get<std::vector<double>>();
        if (static_cast<int>(col.size()) != sol.layout.multilevel_dim())
            throw FormatError("vector dimension mismatch in " + file.string());
        for (int r = 0; r < static_cast<int>(col.size()); ++r) sol.vectors_multilevel(r, s) = col[r];
        std::vector<double> single = pyramid_synthesis(col, sol.layout, prob.fb);
        for (int r = 0; r < static_cast<int>(single.size()); ++r) sol.vectors_single(r, s) = single[r];
    }
    return sol;
}

void save_prediction(const PredictionRecord& rec, const std::filesystem::path& file) {
    json j;
    j["format"] = "waveritz-prediction";
    j["version"] = 1;
    j["stage"] = rec.stage == PredictionStage::First ? "first" : "secondary";
    j["mode"] = to_string(rec.mode);
    j["state"] = rec.state;
    j["source_level"] = rec.source_level;
    j["target_wavelet_level"] = rec.target_wavelet_level;
    j["kmin"] = rec.kmin;
    j["W"] = rec.w;
    j["R"] = rec.r;
    j["lambda"] = rec.lambda;
    j["coeff"] = rec.coeff;
    j["source_energy"] = rec.source_energy;
    j["predicted_energy"] = rec.predicted_energy;
    j["source_norm2"] = rec.source_norm2;
    j["predicted_norm2"] = rec.predicted_norm2;
    j["predicted_level"] = rec.predicted.level;
    j["predicted_kmin"] = rec.predicted.kmin;
    j["predicted_coeffs"] = rec.predicted.coeffs;
    j["multilevel"] = rec.multilevel;
    write_text(j.dump(1), file);
}

PredictionRecord load_prediction(const std::filesystem::path& file) {
    json j = load_json(file);
    require_format(j, "waveritz-prediction");
    PredictionRecord rec;
    rec.stage = j.at("stage") == "secondary" ? PredictionStage::Secondary : PredictionStage::First;
    rec.mode = prediction_mode_from_string(j.at("mode"));
    rec.state = j.at("state");
    rec.source_level = j.at("source_level");
    rec.target_wavelet_level = j.at("target_wavelet_level");
    rec.kmin = j.at("kmin");
    rec.w = j.at("W").get<std::vector<double>>();
    rec.r = j.at("R").get<std::vector<double>>();
    rec.lambda = j.at("lambda").get<std::vector<double>>();
    rec.coeff = j.at("coeff").get<std::vector<double>>();
    rec.source_energy = j.at("source_energy");
    rec.predicted_energy = j.at("predicted_energy");
    rec.source_norm2 = j.at("source_norm2");
    rec.predicted_norm2 = j.at("predicted_norm2");
    rec.predicted.level = j.at("predicted_level");
    rec.predicted.kmin = j.at("predicted_kmin");
    rec.predicted.coeffs = j.at("predicted_coeffs").get<std::vector<double>>();
    rec.multilevel = j.at("multilevel").get<std::vector<double>>();
    return rec;
}

CsvTable energy_table_csv(const EnergyTable& table) {
    CsvTable csv;
    csv.header.push_back("row_label");
    for (int s = 0; s < table.n_states; ++s) csv.header.push_back("state" + std::to_string(s));
    for (size_t r = 0; r < table.rows.size(); ++r) {
        std::vector<std::string> row;
        row.push_back(table.row_labels[r]);
        for (double v : table.rows[r]) row.push_back(format_g15(v));
        csv.add_row(std::move(row));
    }
    return csv;
}

CsvTable scaling_csv(const ScalingFit& fit) {
    CsvTable csv;
    csv.header = {"M", "aggregate", "at_center"};
    for (size_t i = 0; i < fit.levels.size(); ++i)
        csv.add_row({double(fit.levels[i]), fit.aggregate[i], fit.at_center[i]});
    return csv;
}

CsvTable prediction_csv(const PredictionRecord& rec, const std::vector<double>& averaged) {
    CsvTable csv;
    const char* cname = rec.stage == PredictionStage::First ? "alpha" : "beta";
    csv.header = {"k", "x", "W", "R", "lambda", cname};
    if (!averaged.empty()) csv.header.push_back(std::string(cname) + "_avg");
    double scale = std::ldexp(1.0, -rec.target_wavelet_level);
    for (size_t i = 0; i < rec.coeff.size(); ++i) {
        int k = rec.kmin + static_cast<int>(i);
        std::vector<double> row = {double(k), k * scale, rec.w[i], rec.r[i], rec.lambda[i],
                                   rec.coeff[i]};
        if (!averaged.empty()) row.push_back(averaged[i]);
        csv.add_row(row);
    }
    return csv;
}

CsvTable error_norm_csv(const ErrorNormSeries& series) {
    CsvTable csv;
    csv.header = {"state", "level", "norm2_diff", "energy_err", "source_tag"};
    for (const auto& p : series.points) {
        std::vector<std::string> row = {std::to_string(p.state), std::to_string(p.level),
                                        format_g15(p.norm2_diff), format_g15(p.energy_err),
                                        p.source};
        csv.add_row(std::move(row));
    }
    return csv;
}

} // namespace waveritz
