#ifndef DRIFTARB_FORECASTERS_HPP
#define DRIFTARB_FORECASTERS_HPP

#include <span>
#include <string>
#include <vector>

namespace driftarb {

/// Base-model descriptor. Four lightweight heterogeneous kinds share one
/// train/forecast contract; the ensemble is agnostic to what sits behind it.
struct ForecasterKind {
    enum class Type { Mean, SeasonalNaive, ExpSmoothing, AutoRegressive };

    Type type = Type::Mean;
    int period = 1;         // SeasonalNaive: season length >= 1
    double smoothing = 0.3; // ExpSmoothing: alpha in (0, 1]
    int order = 1;          // AutoRegressive: lag count p >= 1
    double ridge = 1e-6;    // AutoRegressive: L2 penalty on lag coefficients

    std::string name() const;
    void validate() const;
    std::size_t min_train_size() const;
};

/// Immutable fitted state; forecast() extends the one-point forecast
/// recursively (each step feeds back as the newest observation).
class FittedForecaster {
public:
    static FittedForecaster fit(const ForecasterKind& kind, std::span<const double> data);

    std::vector<double> forecast(int steps) const;

    const ForecasterKind& kind() const { return kind_; }
    std::size_t trained_len() const { return trained_len_; }

    /// AR only: [intercept, phi_1 .. phi_p].
    const std::vector<double>& coefficients() const { return coeffs_; }

private:
    ForecasterKind kind_;
    std::size_t trained_len_ = 0;
    double mean_ = 0.0;          // Mean
    std::vector<double> season_; // SeasonalNaive: last `period` values, oldest first
    double level_ = 0.0;         // ExpSmoothing
    std::vector<double> coeffs_; // AutoRegressive
    std::vector<double> tail_;   // AutoRegressive: last p values, oldest first
};

} // namespace driftarb

#endif
