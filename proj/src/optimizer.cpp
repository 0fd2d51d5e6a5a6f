#include "procmat/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace procmat {

SettingsVector SettingsVector::normalized() const {
    SettingsVector out = *this;
    for (double& a : out.angles) {
        a = std::fmod(a, 2.0 * M_PI);
        if (a < 0.0) a += 2.0 * M_PI;
    }
    return out;
}

int ScenarioTemplate::angle_count() const {
    const int per_setting = mode == AngleMode::XY ? 1 : 2;
    int n = 0;
    for (const PartySpec& p : parties) n += p.n_settings * per_setting;
    return n;
}

Scenario ScenarioTemplate::instantiate(const SettingsVector& settings) const {
    if (static_cast<int>(settings.angles.size()) != angle_count())
        throw layout_error("settings vector has " +
                           std::to_string(settings.angles.size()) +
                           " angles, template needs " +
                           std::to_string(angle_count()));
    for (double a : settings.angles)
        if (!std::isfinite(a))
            throw validation_error("settings vector contains a non-finite angle");

    Scenario scenario{process, {}};
    std::size_t next = 0;
    auto next_setting = [&] {
        BlochSetting s;
        if (mode == AngleMode::XY) {
            s.plane = BlochSetting::Plane::XY;
            s.phi = settings.angles[next++];
        } else {
            s.plane = BlochSetting::Plane::Full;
            s.theta = settings.angles[next++];
            s.phi = settings.angles[next++];
        }
        return s;
    };

    for (const PartySpec& spec : parties) {
        const SpaceLabel* in = nullptr;
        const SpaceLabel* out = nullptr;
        for (const SpaceLabel& l : spec.labels) {
            if (l.port == Port::Output)
                out = &l;
            else
                in = &l;
        }
        Party party{spec.id, spec.labels, {}};
        for (int s = 0; s < spec.n_settings; ++s) {
            const BlochSetting setting = next_setting();
            if (in && out)
                party.instruments.push_back(
                    projective_instrument(setting, *in, *out));
            else if (in)
                party.instruments.push_back(
                    projective_measurement(setting, *in));
            else if (out)
                party.instruments.push_back(
                    projective_preparation(setting, *out));
            else
                throw layout_error("party " + spec.id + " has no spaces");
        }
        scenario.parties.push_back(std::move(party));
    }
    return scenario;
}

ScenarioTemplate make_template(ProcessMatrix process, int n_settings,
                               AngleMode mode) {
    ScenarioTemplate tmpl{std::move(process), {}, mode};
    for (const SpaceLabel& l : tmpl.process.op.layout()) {
        if (l.dimension != 2)
            throw layout_error(
                "projective templates require qubit spaces, got " +
                to_string(l));
        auto it = std::find_if(
            tmpl.parties.begin(), tmpl.parties.end(),
            [&](const auto& p) { return p.id == l.party; });
        if (it == tmpl.parties.end()) {
            tmpl.parties.push_back(
                ScenarioTemplate::PartySpec{l.party, {l}, n_settings});
        } else {
            it->labels.push_back(l);
            // Input label first, matching the CP-map layout.
            if (it->labels.back().port != Port::Output)
                std::swap(it->labels.front(), it->labels.back());
        }
    }
    return tmpl;
}

// ------------------------------- Nelder-Mead ---------------------------------

namespace {

struct SimplexResult {
    double value = 0.0;
    std::vector<double> point;
    long evaluations = 0;
    bool converged = false;
};

// Simplex maximization with reflection, expansion, contraction, shrink.
template <typename F>
SimplexResult nelder_mead_max(const F& objective, std::vector<double> start,
                              double step, double diameter_tol,
                              long max_evaluations) {
    const std::size_t n = start.size();
    long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return objective(x);
    };

    std::vector<std::vector<double>> vertex(n + 1, start);
    std::vector<double> value(n + 1);
    for (std::size_t i = 0; i < n; ++i) vertex[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) value[i] = eval(vertex[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_descending = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
            return value[a] > value[b];
        });
    };

    auto diameter = [&] {
        double d = 0.0;
        const auto& best = vertex[order[0]];
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                d = std::max(d, std::abs(vertex[i][k] - best[k]));
        return d;
    };

    bool converged = false;
    while (evals < max_evaluations) {
        sort_descending();
        if (diameter() < diameter_tol) {
            converged = true;
            break;
        }

        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];
        const std::size_t best = order[0];

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += vertex[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t k = 0; k < n; ++k)
                x[k] = centroid[k] + t * (centroid[k] - vertex[worst][k]);
            return x;
        };

        const auto reflected = blend(1.0);
        const double reflected_value = eval(reflected);

        if (reflected_value > value[best]) {
            const auto expanded = blend(2.0);
            const double expanded_value = eval(expanded);
            if (expanded_value > reflected_value) {
                vertex[worst] = expanded;
                value[worst] = expanded_value;
            } else {
                vertex[worst] = reflected;
                value[worst] = reflected_value;
            }
            continue;
        }
        if (reflected_value > value[second_worst]) {
            vertex[worst] = reflected;
            value[worst] = reflected_value;
            continue;
        }

        const auto contracted = blend(reflected_value > value[worst] ? 0.5
                                                                     : -0.5);
        const double contracted_value = eval(contracted);
        if (contracted_value > std::min(reflected_value, value[worst])) {
            vertex[worst] = contracted;
            value[worst] = contracted_value;
            continue;
        }

        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k)
                vertex[i][k] = vertex[best][k] +
                               0.5 * (vertex[i][k] - vertex[best][k]);
            value[i] = eval(vertex[i]);
        }
    }

    sort_descending();
    return SimplexResult{value[order[0]], vertex[order[0]], evals, converged};
}

} // namespace

OptimizationResult optimize(const ScenarioTemplate& tmpl,
                            const InequalityFunctional& f, int restarts,
                            std::uint64_t seed) {
    if (restarts < 1) throw error("optimize requires at least one restart");
    const int n = tmpl.angle_count();

    auto objective = [&](const std::vector<double>& angles) {
        const Scenario scenario = tmpl.instantiate(SettingsVector{angles});
        return evaluate(f, compute_table(scenario));
    };

    // All start points come from one generator so the run is reproducible.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> theta_dist(0.0, M_PI);
    std::vector<std::vector<double>> starts(
        static_cast<std::size_t>(restarts));
    for (auto& start : starts) {
        start.resize(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < start.size(); ++k) {
            const bool is_theta =
                tmpl.mode == AngleMode::Bloch && k % 2 == 0;
            start[k] = is_theta ? theta_dist(rng) : phi_dist(rng);
        }
    }

    std::vector<SimplexResult> results(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < restarts; ++r)
        results[static_cast<std::size_t>(r)] = nelder_mead_max(
            objective, starts[static_cast<std::size_t>(r)], 0.5, 1e-10,
            100000);

    // Deterministic merge: maximum value, lowest restart index on ties.
    std::size_t best = 0;
    long total_evals = results[0].evaluations;
    for (std::size_t r = 1; r < results.size(); ++r) {
        total_evals += results[r].evaluations;
        if (results[r].value > results[best].value) best = r;
    }

    OptimizationResult out;
    out.best_value = results[best].value;
    out.best_settings = SettingsVector{results[best].point}.normalized();
    out.evaluations = total_evals;
    out.converged = results[best].converged;
    return out;
}

std::vector<std::pair<double, double>> scan_kappa(
    const std::vector<double>& kappa_grid, const InequalityFunctional& f,
    const SettingsVector& settings, AngleMode mode) {
    std::vector<std::pair<double, double>> out;
    out.reserve(kappa_grid.size());
    for (double kappa : kappa_grid) {
        const ScenarioTemplate tmpl = make_template(
            ghz_process(kappa), static_cast<int>(f.n_settings()), mode);
        const Scenario scenario = tmpl.instantiate(settings);
        out.emplace_back(kappa, evaluate(f, compute_table(scenario)));
    }
    return out;
}

SettingsVector svetlichny_reference_settings() {
    const double quarter = M_PI / 2.0;
    const double phi_a = M_PI / 4.0;
    const double phi_b = 0.0;
    const double phi_c = M_PI / 2.0;
    return SettingsVector{
        {phi_a, phi_a + quarter, phi_b, phi_b + quarter, phi_c,
         phi_c + quarter}};
}

} // namespace procmat
