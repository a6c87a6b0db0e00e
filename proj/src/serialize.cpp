#include "abclust/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "abclust/errors.hpp"
#include "abclust/rng.hpp"

namespace abclust {

std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_absorption_csv(const Graph& g, const AbsorptionVector& m, std::ostream& out) {
    out << "vertex_label,m\n";
    for (std::size_t r = 0; r < m.m.size(); ++r)
        out << g.label_of(m.vertex_of_row[r]) << ',' << format_double(m.m[r]) << '\n';
}

std::string absorption_to_json(const Graph& g, const AbsorptionVector& m) {
    nlohmann::json doc;
    doc["seed"] = g.label_of(m.seed);
    auto& values = doc["values"];
    for (std::size_t r = 0; r < m.m.size(); ++r)
        values.push_back({{"vertex", g.label_of(m.vertex_of_row[r])}, {"m", m.m[r]}});
    return doc.dump(2);
}

void write_matrix_csv(const Graph& g, const std::vector<std::vector<double>>& matrix,
                      std::ostream& out) {
    out << "start\\seed";
    for (int j = 0; j < g.order(); ++j) out << ',' << g.label_of(j);
    out << '\n';
    for (int i = 0; i < g.order(); ++i) {
        out << g.label_of(i);
        for (int j = 0; j < g.order(); ++j) out << ',' << format_double(matrix[i][j]);
        out << '\n';
    }
}

void write_spectrum_csv(const std::vector<double>& eigenvalues, std::ostream& out) {
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        out << i << ',' << format_double(eigenvalues[i]) << '\n';
}

void write_vertex_values_csv(const Graph& g, const std::vector<double>& values,
                             std::ostream& out) {
    out << "vertex_label,component\n";
    for (int v = 0; v < g.order(); ++v)
        out << g.label_of(v) << ',' << format_double(values[v]) << '\n';
}

void write_series_trace_csv(const std::vector<SeriesTraceRow>& rows, std::ostream& out) {
    out << "T,sse,pearson\n";
    for (const auto& row : rows) {
        out << row.cutoff << ',' << format_double(row.sse_per_vertex) << ',';
        out << (row.pearson ? format_double(*row.pearson) : "nan") << '\n';
    }
}

void write_descent_trace_csv(const std::vector<DescentTraceRow>& rows, std::ostream& out) {
    out << "t,max_change,touched_count,objective\n";
    for (const auto& row : rows)
        out << row.t << ',' << format_double(row.max_change) << ',' << row.touched_count << ','
            << format_double(row.objective) << '\n';
}

std::string cut_to_json(const Graph& g, int seed, const CutResult& cut) {
    nlohmann::json doc;
    doc["seed"] = g.label_of(seed);
    std::vector<long long> member_labels;
    member_labels.reserve(cut.members.size());
    for (int v : cut.members) member_labels.push_back(g.label_of(v));
    std::sort(member_labels.begin(), member_labels.end());
    doc["members"] = member_labels;
    doc["capacity"] = cut.capacity;
    doc["vol_s"] = cut.vol_s;
    doc["vol_sbar"] = cut.vol_sbar;
    doc["ncut"] = cut.ncut;
    doc["threshold"] = cut.threshold;
    doc["low_quality"] = cut.low_quality;
    doc["method"] = cut.method;
    doc["classifier"] = cut.classifier;
    return doc.dump(2);
}

std::string manifest_to_json(const RunManifest& manifest) {
    nlohmann::json doc;
    doc["command"] = manifest.command;
    doc["argv"] = manifest.argv;
    if (!manifest.input.empty()) doc["input"] = manifest.input;
    for (const auto& [key, value] : manifest.parameters) doc["parameters"][key] = value;
    doc["rng_seeds"] = manifest.rng_seeds;
    doc["rng_algorithm"] = Xoshiro256ss::algorithm_name();
    doc["tool_version"] = kToolVersion;
    doc["outputs"] = manifest.outputs;
    return doc.dump(2);
}

void write_manifest(const RunManifest& manifest, const std::string& output_path) {
    const std::string path = output_path + ".manifest.json";
    std::ofstream out(path);
    if (!out) throw InputError("cannot write manifest: " + path);
    out << manifest_to_json(manifest) << '\n';
}

} // namespace abclust
