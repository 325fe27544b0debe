#pragma once

#include <array>
#include <string>

#include "json.hpp"

#include "fuzzyvis/distance.hpp"
#include "fuzzyvis/ellipsoid.hpp"
#include "fuzzyvis/embed.hpp"
#include "fuzzyvis/histogram.hpp"
#include "fuzzyvis/observables.hpp"
#include "fuzzyvis/spectrum.hpp"
#include "fuzzyvis/states.hpp"
#include "fuzzyvis/triple.hpp"

namespace fuzzyvis::io {

// Shortest-exact decimal form (%.17g); round-trips the double bit pattern,
// which is what makes rerun outputs byte-comparable.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// columns: index,value,multiplicity,branch,two_j,two_k
std::string spectrum_csv(const EigenvalueTable& table);

// columns: index,analytic,numeric,abs_diff over the sorted expanded multisets
std::string spectrum_compare_csv(const EigenvalueTable& analytic, const EigenvalueTable& numeric);

// columns: t,spectral_dimension,spectral_variance
std::string curves_csv(const ObservableCurves& curves);

// dense matrix; header row and leading column carry the state indices
std::string distance_matrix_csv(const DistanceMatrix& dm);

// inverse of distance_matrix_csv (values only); throws ArgumentError on a
// malformed header or ragged rows
RMatrix distance_matrix_from_csv(const std::string& text);

// convergence flags, witness coefficients, and the solver configuration
nlohmann::json distance_sidecar_json(const DistanceMatrix& dm);

// columns: index,x[,y[,z]],correlation (coordinate columns follow dim)
std::string embedding_csv(const EmbeddingResult& emb);

// columns: bin_low,bin_high,count,density
std::string histogram_csv(const Histogram& h);

nlohmann::json triple_json(const FiniteSpectralTriple& t);
nlohmann::json states_json(const StateEnsemble& ensemble);
StateEnsemble states_from_json(const nlohmann::json& j);
nlohmann::json observables_json(const ObservableReport& report);
nlohmann::json fit_json(const EllipsoidFit& fit, const std::array<double, 3>& expected,
                        const DeformationParams& params);

}  // namespace fuzzyvis::io
