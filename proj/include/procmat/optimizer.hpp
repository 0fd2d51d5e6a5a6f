#pragma once

#include <cstdint>
#include <utility>

#include "procmat/correlations.hpp"

// Derivative-free maximization of inequality functionals over projective
// measurement angles. The landscape is smooth and low-dimensional, so a
// multistart simplex search is enough.

namespace procmat {

enum class AngleMode { XY, Bloch };

// Flattened per-party, per-setting angles: XY mode stores phi, Bloch mode
// stores (theta, phi) pairs; party-major, setting-minor.
struct SettingsVector {
    std::vector<double> angles;

    // Angles reduced mod 2pi for reporting.
    SettingsVector normalized() const;
};

// Maps a SettingsVector onto a Scenario with projective settings. The role
// of each party follows its spaces: input and output make a Lueders
// instrument, input only a projective measurement, output only an unbiased
// preparation.
struct ScenarioTemplate {
    ProcessMatrix process;
    struct PartySpec {
        std::string id;
        Layout labels;  // input label first
        int n_settings = 2;
    };
    std::vector<PartySpec> parties;
    AngleMode mode = AngleMode::XY;

    int angle_count() const;
    Scenario instantiate(const SettingsVector& settings) const;
};

// Group the process layout by party (layout order decides party order) and
// give every party `n_settings` settings.
ScenarioTemplate make_template(ProcessMatrix process, int n_settings,
                               AngleMode mode = AngleMode::XY);

struct OptimizationResult {
    double best_value = 0.0;
    SettingsVector best_settings;
    long evaluations = 0;
    bool converged = false;
};

// Multistart Nelder-Mead, deterministic for fixed (seed, restarts): start
// points come from one seeded generator, restarts run independently (in
// parallel) and the merge takes the maximum with lowest-restart
// tie-breaking. Each restart stops when the simplex diameter falls below
// 1e-10 or after 1e5 evaluations.
OptimizationResult optimize(const ScenarioTemplate& tmpl,
                            const InequalityFunctional& f, int restarts,
                            std::uint64_t seed);

// Evaluate f on the ghz_process(kappa) scenario at fixed settings for each
// grid point.
std::vector<std::pair<double, double>> scan_kappa(
    const std::vector<double>& kappa_grid, const InequalityFunctional& f,
    const SettingsVector& settings, AngleMode mode = AngleMode::XY);

// The appendix working point for the Svetlichny maximum: phi = (pi/4, 0,
// pi/2) with the second setting of each party phase-advanced by pi/2.
SettingsVector svetlichny_reference_settings();

} // namespace procmat
