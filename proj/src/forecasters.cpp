#include "driftarb/forecasters.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "driftarb/errors.hpp"

namespace driftarb {

std::string ForecasterKind::name() const {
    std::ostringstream os;
    switch (type) {
        case Type::Mean:
            os << "mean";
            break;
        case Type::SeasonalNaive:
            os << "seasonal_naive(" << period << ")";
            break;
        case Type::ExpSmoothing:
            os << "exp_smoothing(" << smoothing << ")";
            break;
        case Type::AutoRegressive:
            os << "ar(" << order << ")";
            break;
    }
    return os.str();
}

void ForecasterKind::validate() const {
    switch (type) {
        case Type::Mean:
            break;
        case Type::SeasonalNaive:
            if (period < 1) throw ConfigError("seasonal_naive: period must be >= 1");
            break;
        case Type::ExpSmoothing:
            if (!(smoothing > 0.0 && smoothing <= 1.0))
                throw ConfigError("exp_smoothing: alpha must lie in (0, 1]");
            break;
        case Type::AutoRegressive:
            if (order < 1) throw ConfigError("ar: order p must be >= 1");
            if (ridge < 0.0) throw ConfigError("ar: ridge must be >= 0");
            break;
    }
}

std::size_t ForecasterKind::min_train_size() const {
    switch (type) {
        case Type::Mean: return 1;
        case Type::SeasonalNaive: return static_cast<std::size_t>(period);
        case Type::ExpSmoothing: return 1;
        case Type::AutoRegressive: return static_cast<std::size_t>(order) + 2;
    }
    return 1;
}

namespace {

// Gaussian elimination with partial pivoting; a is (dim x dim) row-major.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b, std::size_t dim) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double pivot_floor = 1e-13 * std::max(scale, 1.0);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::abs(a[r * dim + col]) > std::abs(a[pivot * dim + col])) pivot = r;
        if (std::abs(a[pivot * dim + col]) < pivot_floor)
            throw NumericError("ar fit: singular normal equations; set ridge > 0");
        if (pivot != col) {
            for (std::size_t c = 0; c < dim; ++c) std::swap(a[col * dim + c], a[pivot * dim + c]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < dim; ++r) {
            const double factor = a[r * dim + col] / a[col * dim + col];
            for (std::size_t c = col; c < dim; ++c) a[r * dim + c] -= factor * a[col * dim + c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(dim);
    for (std::size_t ri = dim; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < dim; ++c) s -= a[ri * dim + c] * x[c];
        x[ri] = s / a[ri * dim + ri];
    }
    return x;
}

// Ridge-regularized least squares for x_t = c + sum_i phi_i x_{t-i}.
// The intercept is not penalized, which keeps the fit shift-equivariant.
std::vector<double> fit_ar(std::span<const double> data, int p, double ridge) {
    const std::size_t dim = static_cast<std::size_t>(p) + 1;
    const std::size_t rows = data.size() - static_cast<std::size_t>(p);
    std::vector<double> xtx(dim * dim, 0.0);
    std::vector<double> xty(dim, 0.0);
    std::vector<double> row(dim);
    for (std::size_t t = static_cast<std::size_t>(p); t < data.size(); ++t) {
        row[0] = 1.0;
        for (int i = 1; i <= p; ++i) row[static_cast<std::size_t>(i)] = data[t - static_cast<std::size_t>(i)];
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) xtx[r * dim + c] += row[r] * row[c];
            xty[r] += row[r] * data[t];
        }
    }
    (void)rows;
    for (std::size_t i = 1; i < dim; ++i) xtx[i * dim + i] += ridge;
    return solve_linear(std::move(xtx), std::move(xty), dim);
}

} // namespace

FittedForecaster FittedForecaster::fit(const ForecasterKind& kind, std::span<const double> data) {
    kind.validate();
    if (data.size() < kind.min_train_size())
        throw DataError(kind.name() + ": needs at least " + std::to_string(kind.min_train_size()) +
                        " observations, got " + std::to_string(data.size()));
    for (double v : data)
        if (!std::isfinite(v)) throw DataError(kind.name() + ": non-finite training value");

    FittedForecaster m;
    m.kind_ = kind;
    m.trained_len_ = data.size();
    switch (kind.type) {
        case ForecasterKind::Type::Mean: {
            double s = 0.0;
            for (double v : data) s += v;
            m.mean_ = s / static_cast<double>(data.size());
            break;
        }
        case ForecasterKind::Type::SeasonalNaive: {
            const std::size_t period = static_cast<std::size_t>(kind.period);
            m.season_.assign(data.end() - static_cast<std::ptrdiff_t>(period), data.end());
            break;
        }
        case ForecasterKind::Type::ExpSmoothing: {
            double level = data[0];
            for (std::size_t t = 1; t < data.size(); ++t)
                level = kind.smoothing * data[t] + (1.0 - kind.smoothing) * level;
            m.level_ = level;
            break;
        }
        case ForecasterKind::Type::AutoRegressive: {
            m.coeffs_ = fit_ar(data, kind.order, kind.ridge);
            const std::size_t p = static_cast<std::size_t>(kind.order);
            m.tail_.assign(data.end() - static_cast<std::ptrdiff_t>(p), data.end());
            break;
        }
    }
    return m;
}

std::vector<double> FittedForecaster::forecast(int steps) const {
    if (steps < 1) throw ConfigError("forecast: steps must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    switch (kind_.type) {
        case ForecasterKind::Type::Mean:
            out.assign(static_cast<std::size_t>(steps), mean_);
            break;
        case ForecasterKind::Type::SeasonalNaive:
            // feeding forecasts back reproduces the stored cycle
            for (int h = 0; h < steps; ++h)
                out.push_back(season_[static_cast<std::size_t>(h) % season_.size()]);
            break;
        case ForecasterKind::Type::ExpSmoothing:
            // recursive feedback leaves the level fixed: a*f + (1-a)*l == l
            out.assign(static_cast<std::size_t>(steps), level_);
            break;
        case ForecasterKind::Type::AutoRegressive: {
            std::vector<double> history = tail_;
            for (int h = 0; h < steps; ++h) {
                double next = coeffs_[0];
                for (int i = 1; i <= kind_.order; ++i)
                    next += coeffs_[static_cast<std::size_t>(i)] *
                            history[history.size() - static_cast<std::size_t>(i)];
                out.push_back(next);
                history.push_back(next);
            }
            break;
        }
    }
    return out;
}

} // namespace driftarb
