#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "windspc/types.hpp"

namespace windspc::regress {

// One polynomial regressor: a raw variable taken to a positive integer power.
struct ModelTerm {
    std::string variable;
    int power = 1;

    std::string display_name() const;  // e.g. "wind_speed^3"
    auto operator<=>(const ModelTerm&) const = default;
};

// Fitted ordinary least squares model with an intercept. Statistics vectors
// hold the intercept at index 0 followed by one entry per term.
struct RegressionModel {
    std::string response;
    std::vector<ModelTerm> terms;
    double intercept = 0.0;
    std::vector<double> coefficients;  // per term, aligned with `terms`
    std::size_t n = 0;                 // rows used in the fit
    std::size_t dropped = 0;           // rows dropped for missing fields
    double sse = 0.0;
    double sigma2_hat = 0.0;           // sse / (n - p), p = terms + intercept
    std::vector<double> std_errors;
    std::vector<double> t_values;
    std::vector<double> p_values;
};

// Least squares via column-pivoted QR (never by inverting the normal
// equations). Rows with a missing response or term variable are dropped and
// counted. Throws InsufficientData when fewer than |terms|+2 usable rows
// remain, RankDeficient on a collinear design.
RegressionModel ols_fit(const Dataset& d, std::string_view response,
                        std::vector<ModelTerm> terms);

// intercept + sum coefficient * value^power. Throws MissingField when the
// record lacks a term variable.
double predict(const RegressionModel& m, const ScadaRecord& r);

struct SeriesPoint {
    Timestamp t = 0;
    double value = 0.0;

    bool operator==(const SeriesPoint&) const = default;
};

struct ResidualSeries {
    std::vector<SeriesPoint> points;  // actual - predicted, timestamp order
    std::size_t skipped = 0;          // records lacking a required field
};

ResidualSeries residual_series(const RegressionModel& m, const Dataset& d);

// SSE_p / sigma2_full - n + 2p, with p counting the intercept. The full
// model scores exactly p.
double mallows_cp(double candidate_sse, std::size_t p_including_intercept, double full_sigma2,
                  std::size_t n);

struct SubsetCandidate {
    std::vector<ModelTerm> terms;
    double cp = 0.0;
    double sse = 0.0;
};

struct SubsetSelection {
    RegressionModel best;
    std::vector<SubsetCandidate> enumerated;  // every full-rank subset, incl. intercept-only
    std::size_t skipped_rank_deficient = 0;
};

// Exhaustive all-subset selection by Mallow's Cp over at most 20 candidate
// terms (the intercept is always included). All subsets are fit on the rows
// complete for every candidate so their SSEs are comparable. Ties break
// toward fewer terms, then lexicographic term order. Rank-deficient subsets
// are skipped with a count; a rank-deficient full model is an error.
SubsetSelection best_subset(const Dataset& d, std::string_view response,
                            std::vector<ModelTerm> candidates);

// Sample Pearson correlation. Inputs must have equal length (>= 2) and
// nonzero variance.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

// Pairwise-complete variant: positions where either side is missing are
// dropped before the computation.
double pearson_correlation(std::span<const std::optional<double>> a,
                           std::span<const std::optional<double>> b);

// Autocorrelation r_0..r_max_lag with the biased estimator (denominator over
// the full mean-centered series), so r_0 == 1 and |r_k| <= 1.
std::vector<double> acf(std::span<const double> x, std::size_t max_lag);

}  // namespace windspc::regress
