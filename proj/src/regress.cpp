#include "windspc/regress.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <set>

#include "windspc/error.hpp"

namespace windspc::regress {

std::string ModelTerm::display_name() const {
    return power == 1 ? variable : variable + "^" + std::to_string(power);
}

namespace {

double term_value(const ScadaRecord& r, const ModelTerm& term) {
    auto v = field_value(r, term.variable);
    if (!v) fail(Errc::MissingField, "record lacks '" + term.variable + "'");
    double x = *v;
    double out = 1.0;
    for (int i = 0; i < term.power; ++i) out *= x;
    return out;
}

void validate_terms(const std::vector<ModelTerm>& terms) {
    std::set<std::pair<std::string, int>> seen;
    for (const auto& t : terms) {
        if (t.power < 1) {
            fail(Errc::InvalidParams, "term power must be >= 1 for " + t.variable);
        }
        if (!is_known_field(t.variable)) {
            fail(Errc::UnknownField, "no such field: " + t.variable);
        }
        if (!seen.insert({t.variable, t.power}).second) {
            fail(Errc::InvalidParams, "duplicate term " + t.display_name());
        }
    }
}

struct DesignData {
    Eigen::MatrixXd X;  // column 0 is the intercept
    Eigen::VectorXd y;
    std::size_t dropped = 0;
};

// Rows complete for the response and every listed term.
DesignData build_design(const Dataset& d, std::string_view response,
                        const std::vector<ModelTerm>& terms) {
    std::vector<const ScadaRecord*> rows;
    std::size_t dropped = 0;
    for (const auto& record : d.records) {
        bool complete = field_value(record, response).has_value();
        for (const auto& term : terms) {
            if (!complete) break;
            complete = field_value(record, term.variable).has_value();
        }
        if (complete) {
            rows.push_back(&record);
        } else {
            ++dropped;
        }
    }

    DesignData data;
    data.dropped = dropped;
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto p = static_cast<Eigen::Index>(terms.size()) + 1;
    data.X.resize(n, p);
    data.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const ScadaRecord& r = *rows[static_cast<std::size_t>(i)];
        data.X(i, 0) = 1.0;
        for (std::size_t j = 0; j < terms.size(); ++j) {
            data.X(i, static_cast<Eigen::Index>(j + 1)) = term_value(r, terms[j]);
        }
        data.y(i) = *field_value(r, response);
    }
    return data;
}

struct LsqFit {
    Eigen::VectorXd beta;
    double sse = 0.0;
    Eigen::VectorXd se;
    bool full_rank = true;
};

LsqFit solve_lsq(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, bool want_errors) {
    LsqFit fit;
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < p) {
        fit.full_rank = false;
        return fit;
    }
    fit.beta = qr.solve(y);
    fit.sse = (y - X * fit.beta).squaredNorm();

    if (want_errors) {
        const double sigma2 = fit.sse / static_cast<double>(n - p);
        // (X^T X)^{-1} = P R^{-1} R^{-T} P^T from the pivoted QR factors.
        Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
        Eigen::MatrixXd Rinv =
            R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
        Eigen::MatrixXd cov = Rinv * Rinv.transpose();
        cov = qr.colsPermutation() * cov * qr.colsPermutation().transpose();
        fit.se = (sigma2 * cov.diagonal().array()).cwiseMax(0.0).sqrt();
    }
    return fit;
}

RegressionModel model_from_fit(std::string_view response, std::vector<ModelTerm> terms,
                               const DesignData& data, const LsqFit& fit) {
    RegressionModel m;
    m.response = std::string(response);
    m.terms = std::move(terms);
    m.n = static_cast<std::size_t>(data.y.size());
    m.dropped = data.dropped;
    m.intercept = fit.beta(0);
    m.coefficients.assign(fit.beta.data() + 1, fit.beta.data() + fit.beta.size());
    m.sse = fit.sse;
    const auto p = static_cast<std::size_t>(fit.beta.size());
    const double dof = static_cast<double>(m.n - p);
    m.sigma2_hat = fit.sse / dof;

    boost::math::students_t_distribution<double> dist(dof);
    m.std_errors.resize(p);
    m.t_values.resize(p);
    m.p_values.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        const double est = fit.beta(static_cast<Eigen::Index>(i));
        const double se = fit.se(static_cast<Eigen::Index>(i));
        m.std_errors[i] = se;
        if (se > 0.0) {
            m.t_values[i] = est / se;
            m.p_values[i] =
                2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(m.t_values[i])));
        } else {
            // exact fit: the coefficient is either identically zero or
            // infinitely significant
            m.t_values[i] = est == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            m.p_values[i] = est == 0.0 ? 1.0 : 0.0;
        }
    }
    return m;
}

}  // namespace

RegressionModel ols_fit(const Dataset& d, std::string_view response,
                        std::vector<ModelTerm> terms) {
    validate_terms(terms);
    if (!is_known_field(response)) fail(Errc::UnknownField, "no such field: " + std::string(response));

    DesignData data = build_design(d, response, terms);
    const auto p = terms.size() + 1;
    if (static_cast<std::size_t>(data.y.size()) <= p) {
        fail(Errc::InsufficientData,
             "need more than " + std::to_string(p) + " complete rows, have " +
                 std::to_string(data.y.size()));
    }
    LsqFit fit = solve_lsq(data.X, data.y, /*want_errors=*/true);
    if (!fit.full_rank) {
        fail(Errc::RankDeficient, "design matrix for '" + std::string(response) +
                                      "' is rank deficient");
    }
    return model_from_fit(response, std::move(terms), data, fit);
}

double predict(const RegressionModel& m, const ScadaRecord& r) {
    double out = m.intercept;
    for (std::size_t i = 0; i < m.terms.size(); ++i) {
        out += m.coefficients[i] * term_value(r, m.terms[i]);
    }
    return out;
}

ResidualSeries residual_series(const RegressionModel& m, const Dataset& d) {
    ResidualSeries series;
    for (const auto& record : d.records) {
        bool complete = field_value(record, m.response).has_value();
        for (const auto& term : m.terms) {
            if (!complete) break;
            complete = field_value(record, term.variable).has_value();
        }
        if (!complete) {
            ++series.skipped;
            continue;
        }
        series.points.push_back(
            SeriesPoint{record.timestamp, *field_value(record, m.response) - predict(m, record)});
    }
    return series;
}

double mallows_cp(double candidate_sse, std::size_t p_including_intercept, double full_sigma2,
                  std::size_t n) {
    if (full_sigma2 == 0.0) {
        fail(Errc::DegenerateFullModel, "full model has zero residual variance");
    }
    if (!(full_sigma2 > 0.0)) fail(Errc::InvalidParams, "sigma2 must be positive");
    if (n <= p_including_intercept) fail(Errc::InvalidParams, "need n > p");
    return candidate_sse / full_sigma2 - static_cast<double>(n) +
           2.0 * static_cast<double>(p_including_intercept);
}

SubsetSelection best_subset(const Dataset& d, std::string_view response,
                            std::vector<ModelTerm> candidates) {
    if (candidates.size() > 20) {
        fail(Errc::TooManyCandidates,
             "exhaustive enumeration supports at most 20 candidates, got " +
                 std::to_string(candidates.size()));
    }
    validate_terms(candidates);
    std::sort(candidates.begin(), candidates.end());

    // One shared design over rows complete for every candidate keeps the
    // subset SSEs comparable.
    DesignData data = build_design(d, response, candidates);
    const std::size_t k = candidates.size();
    const std::size_t p_full = k + 1;
    if (static_cast<std::size_t>(data.y.size()) <= p_full) {
        fail(Errc::InsufficientData,
             "need more than " + std::to_string(p_full) + " complete rows, have " +
                 std::to_string(data.y.size()));
    }
    const auto n = static_cast<std::size_t>(data.y.size());

    LsqFit full = solve_lsq(data.X, data.y, /*want_errors=*/false);
    if (!full.full_rank) {
        fail(Errc::RankDeficient, "full candidate model is rank deficient");
    }
    const double full_sigma2 = full.sse / static_cast<double>(n - p_full);
    if (full_sigma2 == 0.0) {
        fail(Errc::DegenerateFullModel, "full model has zero residual variance");
    }

    SubsetSelection selection;
    std::size_t best_index = 0;
    bool have_best = false;

    auto better = [&](const SubsetCandidate& a, const SubsetCandidate& b) {
        if (a.cp != b.cp) return a.cp < b.cp;
        if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
        return a.terms < b.terms;
    };

    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<ModelTerm> terms;
        std::vector<Eigen::Index> cols{0};
        for (std::size_t j = 0; j < k; ++j) {
            if (mask & (1u << j)) {
                terms.push_back(candidates[j]);
                cols.push_back(static_cast<Eigen::Index>(j + 1));
            }
        }
        Eigen::MatrixXd Xs(data.X.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            Xs.col(static_cast<Eigen::Index>(c)) = data.X.col(cols[c]);
        }
        LsqFit fit = solve_lsq(Xs, data.y, /*want_errors=*/false);
        if (!fit.full_rank) {
            ++selection.skipped_rank_deficient;
            continue;
        }
        SubsetCandidate cand;
        cand.terms = std::move(terms);
        cand.sse = fit.sse;
        cand.cp = mallows_cp(fit.sse, cand.terms.size() + 1, full_sigma2, n);
        if (!have_best || better(cand, selection.enumerated[best_index])) {
            best_index = selection.enumerated.size();
            have_best = true;
        }
        selection.enumerated.push_back(std::move(cand));
    }

    // Refit the winner with full statistics on the same shared design rows.
    const auto& winner = selection.enumerated[best_index];
    std::vector<Eigen::Index> cols{0};
    for (std::size_t j = 0; j < k; ++j) {
        if (std::find(winner.terms.begin(), winner.terms.end(), candidates[j]) !=
            winner.terms.end()) {
            cols.push_back(static_cast<Eigen::Index>(j + 1));
        }
    }
    Eigen::MatrixXd Xb(data.X.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Xb.col(static_cast<Eigen::Index>(c)) = data.X.col(cols[c]);
    }
    LsqFit fit = solve_lsq(Xb, data.y, /*want_errors=*/true);
    DesignData winner_data;
    winner_data.X = std::move(Xb);
    winner_data.y = data.y;
    winner_data.dropped = data.dropped;
    selection.best = model_from_fit(response, winner.terms, winner_data, fit);
    return selection;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        fail(Errc::LengthMismatch, "series lengths differ: " + std::to_string(a.size()) + " vs " +
                                       std::to_string(b.size()));
    }
    const std::size_t n = a.size();
    if (n < 2) fail(Errc::SeriesTooShort, "need at least 2 paired observations");

    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double ssa = 0.0, ssb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        ssa += da * da;
        ssb += db * db;
        sab += da * db;
    }
    if (ssa == 0.0 || ssb == 0.0) {
        fail(Errc::ZeroVariance, "correlation undefined for a constant series");
    }
    return std::clamp(sab / std::sqrt(ssa * ssb), -1.0, 1.0);
}

double pearson_correlation(std::span<const std::optional<double>> a,
                           std::span<const std::optional<double>> b) {
    if (a.size() != b.size()) {
        fail(Errc::LengthMismatch, "series lengths differ: " + std::to_string(a.size()) + " vs " +
                                       std::to_string(b.size()));
    }
    std::vector<double> xa, xb;
    xa.reserve(a.size());
    xb.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && b[i]) {
            xa.push_back(*a[i]);
            xb.push_back(*b[i]);
        }
    }
    return pearson_correlation(std::span<const double>(xa), std::span<const double>(xb));
}

std::vector<double> acf(std::span<const double> x, std::size_t max_lag) {
    const std::size_t n = x.size();
    if (n <= max_lag) {
        fail(Errc::SeriesTooShort, "series length " + std::to_string(n) +
                                       " must exceed max lag " + std::to_string(max_lag));
    }
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    double denom = 0.0;
    for (double v : x) denom += (v - mean) * (v - mean);
    if (denom == 0.0) fail(Errc::ZeroVariance, "acf undefined for a constant series");

    std::vector<double> r(max_lag + 1);
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        double num = 0.0;
        for (std::size_t t = 0; t + lag < n; ++t) {
            num += (x[t] - mean) * (x[t + lag] - mean);
        }
        r[lag] = std::clamp(num / denom, -1.0, 1.0);
    }
    return r;
}

}  // namespace windspc::regress
