#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "abclust/approx.hpp"
#include "abclust/classify.hpp"
#include "abclust/descent.hpp"
#include "abclust/graph.hpp"
#include "abclust/markov.hpp"

namespace abclust {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

void write_absorption_csv(const Graph& g, const AbsorptionVector& m, std::ostream& out);
std::string absorption_to_json(const Graph& g, const AbsorptionVector& m);

/// Dense matrix CSV with a label header row; entry (i, j) = value[i][j].
void write_matrix_csv(const Graph& g, const std::vector<std::vector<double>>& matrix,
                      std::ostream& out);

/// Rows "index,eigenvalue" in the given order.
void write_spectrum_csv(const std::vector<double>& eigenvalues, std::ostream& out);

/// Rows "vertex_label,component" for a per-vertex vector.
void write_vertex_values_csv(const Graph& g, const std::vector<double>& values,
                             std::ostream& out);

void write_series_trace_csv(const std::vector<SeriesTraceRow>& rows, std::ostream& out);
void write_descent_trace_csv(const std::vector<DescentTraceRow>& rows, std::ostream& out);

std::string cut_to_json(const Graph& g, int seed, const CutResult& cut);

/// Reproducibility sidecar: everything needed to regenerate an output file.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::string input;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::uint64_t> rng_seeds;
    std::vector<std::string> outputs;
};

std::string manifest_to_json(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::string& output_path);

constexpr const char* kToolVersion = "0.1.0";

} // namespace abclust
