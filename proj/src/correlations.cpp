#include "procmat/correlations.hpp"

#include <algorithm>
#include <cmath>

#include "procmat/kernels.hpp"

namespace procmat {

namespace {

constexpr double kDustTol = 1e-14;
constexpr double kNegativeTol = 1e-12;
constexpr double kRenormTol = 1e-9;

std::vector<Index> shape_product_strides(const std::vector<Index>& shape) {
    std::vector<Index> strides(shape.size(), 1);
    for (int k = static_cast<int>(shape.size()) - 2; k >= 0; --k)
        strides[static_cast<std::size_t>(k)] =
            strides[static_cast<std::size_t>(k) + 1] *
            shape[static_cast<std::size_t>(k) + 1];
    return strides;
}

Index shape_count(const std::vector<Index>& shape) {
    Index n = 1;
    for (Index s : shape) n *= s;
    return n;
}

void unflatten(Index flat, const std::vector<Index>& shape,
               std::vector<int>& out) {
    out.resize(shape.size());
    for (int k = static_cast<int>(shape.size()) - 1; k >= 0; --k) {
        out[static_cast<std::size_t>(k)] =
            static_cast<int>(flat % shape[static_cast<std::size_t>(k)]);
        flat /= shape[static_cast<std::size_t>(k)];
    }
}

} // namespace

// ------------------------------- scenarios ----------------------------------

void check_scenario(const Scenario& s, double tol) {
    Layout combined;
    for (const Party& p : s.parties) {
        if (p.instruments.empty())
            throw validation_error("party " + p.id + " has no instruments");
        combined.insert(combined.end(), p.labels.begin(), p.labels.end());

        for (const Instrument& instr : p.instruments) {
            std::string why;
            if (!is_valid_instrument(instr, tol, &why))
                throw validation_error("party " + p.id + " instrument '" +
                                       instr.setting_name + "': " + why);
            if (instr.branches.front().choi.layout() != p.labels)
                throw layout_error("party " + p.id +
                                   " instrument acts on wrong spaces");
        }
    }
    if (!is_permutation_of(combined, s.process.op.layout()))
        throw layout_error(
            "party labels " + to_string(combined) +
            " do not partition the process layout " +
            to_string(s.process.op.layout()));
}

// --------------------------- probability tables ------------------------------

Index ProbabilityTable::settings_count() const {
    return shape_count(settings_shape);
}

Index ProbabilityTable::outcomes_count() const {
    return shape_count(outcomes_shape);
}

Index ProbabilityTable::slice_offset(const std::vector<int>& settings) const {
    if (settings.size() != settings_shape.size())
        throw layout_error("settings tuple has wrong arity");
    const auto strides = shape_product_strides(settings_shape);
    Index flat = 0;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        if (settings[k] < 0 || settings[k] >= settings_shape[k])
            throw layout_error("setting index out of range for party " +
                               std::to_string(k));
        flat += settings[k] * strides[k];
    }
    return flat * outcomes_count();
}

double ProbabilityTable::at(const std::vector<int>& settings,
                            const std::vector<int>& outcomes) const {
    const auto strides = shape_product_strides(outcomes_shape);
    Index flat = 0;
    for (std::size_t k = 0; k < outcomes.size(); ++k)
        flat += outcomes[k] * strides[k];
    return values[static_cast<std::size_t>(slice_offset(settings) + flat)];
}

bool ProbabilityTable::is_valid(double tol, std::string* why) const {
    const Index oc = outcomes_count();
    for (Index s = 0; s < settings_count(); ++s) {
        double sum = 0.0;
        for (Index o = 0; o < oc; ++o) {
            const double p = values[static_cast<std::size_t>(s * oc + o)];
            if (p < -tol || p > 1.0 + tol) {
                if (why) *why = "entry out of [0, 1]: " + std::to_string(p);
                return false;
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > tol) {
            if (why)
                *why = "slice sum deviates from 1 by " +
                       std::to_string(sum - 1.0);
            return false;
        }
    }
    return true;
}

std::vector<double> born_rule(const Scenario& s,
                              const std::vector<int>& settings) {
    if (settings.size() != s.parties.size())
        throw layout_error("one setting index per party required");

    std::vector<const Instrument*> chosen;
    std::vector<Index> outcomes_shape;
    for (std::size_t p = 0; p < s.parties.size(); ++p) {
        const Party& party = s.parties[p];
        if (settings[p] < 0 ||
            settings[p] >= static_cast<int>(party.instruments.size()))
            throw layout_error("setting index out of range for party " +
                               party.id);
        chosen.push_back(
            &party.instruments[static_cast<std::size_t>(settings[p])]);
        outcomes_shape.push_back(chosen.back()->n_outcomes());
    }

    const Index n_outcomes = shape_count(outcomes_shape);
    std::vector<double> slice(static_cast<std::size_t>(n_outcomes));
    std::vector<int> outcome;
    for (Index flat = 0; flat < n_outcomes; ++flat) {
        unflatten(flat, outcomes_shape, outcome);
        Operator joint =
            chosen[0]->branches[static_cast<std::size_t>(outcome[0])].choi;
        for (std::size_t p = 1; p < chosen.size(); ++p)
            joint = tensor(
                joint,
                chosen[p]->branches[static_cast<std::size_t>(outcome[p])].choi);
        const Operator aligned = reorder(joint, s.process.op.layout());
        const Complex value = kernels::trace_product(aligned.entries(),
                                                     s.process.op.entries());
        if (std::abs(value.imag()) > kRenormTol)
            throw numerical_error("Born-rule probability has imaginary part " +
                                  std::to_string(value.imag()));
        double p = value.real();
        if (p < -kNegativeTol)
            throw numerical_error("negative Born-rule probability " +
                                  std::to_string(p));
        if (p < kDustTol) p = 0.0;
        slice[static_cast<std::size_t>(flat)] = p;
    }

    double sum = 0.0;
    for (double p : slice) sum += p;
    if (sum > 0.0 && std::abs(sum - 1.0) < kRenormTol)
        for (double& p : slice) p /= sum;
    return slice;
}

ProbabilityTable compute_table(const Scenario& s) {
    ProbabilityTable table;
    for (const Party& p : s.parties) {
        table.settings_shape.push_back(p.n_settings());
        // All settings of one party must share the outcome structure.
        const Index n_out = p.instruments.front().n_outcomes();
        for (const Instrument& instr : p.instruments)
            if (instr.n_outcomes() != n_out)
                throw validation_error(
                    "party " + p.id +
                    " has settings with differing outcome counts");
        table.outcomes_shape.push_back(n_out);
        table.outcome_values.push_back(p.instruments.front().outcome_values);
    }

    const Index n_settings = table.settings_count();
    const Index n_outcomes = table.outcomes_count();
    table.values.assign(static_cast<std::size_t>(n_settings * n_outcomes),
                        0.0);

    // Tuples are independent; each writes its own slice.
#pragma omp parallel for schedule(static)
    for (Index flat = 0; flat < n_settings; ++flat) {
        std::vector<int> settings;
        unflatten(flat, table.settings_shape, settings);
        const std::vector<double> slice = born_rule(s, settings);
        std::copy(slice.begin(), slice.end(),
                  table.values.begin() +
                      static_cast<std::ptrdiff_t>(flat * n_outcomes));
    }
    return table;
}

// ------------------------------- correlators ---------------------------------

double expectation(const ProbabilityTable& table,
                   const std::vector<int>& settings) {
    for (const auto& vals : table.outcome_values)
        for (double v : vals)
            if (v != 1.0 && v != -1.0)
                throw validation_error(
                    "expectation requires +/-1-valued outcomes");

    const Index offset = table.slice_offset(settings);
    const Index oc = table.outcomes_count();
    std::vector<int> outcome;
    double sum = 0.0;
    for (Index flat = 0; flat < oc; ++flat) {
        unflatten(flat, table.outcomes_shape, outcome);
        double sign = 1.0;
        for (std::size_t p = 0; p < outcome.size(); ++p)
            sign *= table.outcome_values[p]
                                        [static_cast<std::size_t>(outcome[p])];
        sum += sign * table.values[static_cast<std::size_t>(offset + flat)];
    }
    return sum;
}

// ---------------------------- inequality functionals -------------------------

Index InequalityFunctional::n_settings() const {
    Index max_setting = 0;
    for (const auto& [tuple, coeff] : coefficients)
        for (int x : tuple)
            max_setting = std::max<Index>(max_setting, x + 1);
    return max_setting;
}

InequalityFunctional chsh() {
    InequalityFunctional f;
    f.name = "chsh";
    f.bound = 2.0;
    f.coefficients = {{{0, 0}, +1.0},
                      {{0, 1}, -1.0},
                      {{1, 0}, +1.0},
                      {{1, 1}, +1.0}};
    return f;
}

InequalityFunctional mermin() {
    InequalityFunctional f;
    f.name = "mermin";
    f.bound = 2.0;
    f.coefficients = {{{0, 0, 0}, +1.0},
                      {{0, 1, 1}, -1.0},
                      {{1, 0, 1}, -1.0},
                      {{1, 1, 0}, -1.0}};
    return f;
}

InequalityFunctional svetlichny() {
    InequalityFunctional f;
    f.name = "svetlichny";
    f.bound = 4.0;
    f.absolute = true;
    f.coefficients = {{{0, 0, 0}, +1.0}, {{0, 0, 1}, +1.0},
                      {{0, 1, 0}, +1.0}, {{1, 0, 0}, +1.0},
                      {{1, 1, 0}, -1.0}, {{1, 0, 1}, -1.0},
                      {{0, 1, 1}, -1.0}, {{1, 1, 1}, -1.0}};
    return f;
}

InequalityFunctional preset_inequality(const std::string& name) {
    if (name == "chsh") return chsh();
    if (name == "mermin") return mermin();
    if (name == "svetlichny") return svetlichny();
    throw error("unknown inequality preset '" + name +
                "' (expected chsh, mermin, or svetlichny)");
}

double evaluate(const InequalityFunctional& f, const ProbabilityTable& table) {
    if (f.n_parties() != table.n_parties())
        throw layout_error("inequality arity does not match the table");
    double sum = 0.0;
    for (const auto& [tuple, coeff] : f.coefficients)
        sum += coeff * expectation(table, tuple);
    return f.absolute ? std::abs(sum) : sum;
}

// ------------------------------ GHZ paradox ----------------------------------

double GhzParadoxReport::max_deviation() const {
    return std::max(std::max(xxx, xyy), std::max(yxy, yyx));
}

GhzParadoxReport ghz_paradox_check(const ProbabilityTable& table) {
    if (table.n_parties() != 3)
        throw layout_error("GHZ paradox check requires three parties");
    for (Index s : table.settings_shape)
        if (s < 2)
            throw layout_error(
                "GHZ paradox check requires settings {X, Y} per party");

    GhzParadoxReport report;
    report.xxx = std::abs(expectation(table, {0, 0, 0}) - 1.0);
    report.xyy = std::abs(expectation(table, {0, 1, 1}) + 1.0);
    report.yxy = std::abs(expectation(table, {1, 0, 1}) + 1.0);
    report.yyx = std::abs(expectation(table, {1, 1, 0}) + 1.0);
    return report;
}

// ------------------------------ no-signalling --------------------------------

double no_signalling_distance(const ProbabilityTable& table, int from_party,
                              const std::vector<int>& to_parties) {
    const Index n = table.n_parties();
    if (from_party < 0 || from_party >= n)
        throw layout_error("sender index out of range");
    std::vector<bool> is_receiver(static_cast<std::size_t>(n), false);
    for (int t : to_parties) {
        if (t < 0 || t >= n) throw layout_error("receiver index out of range");
        if (t == from_party)
            throw layout_error("sender cannot be its own receiver");
        is_receiver[static_cast<std::size_t>(t)] = true;
    }

    // Enumerate receiver-outcome marginals for every spectator-setting
    // assignment and every sender-setting pair.
    std::vector<Index> spectator_settings_shape;
    for (Index p = 0; p < n; ++p)
        if (p != from_party)
            spectator_settings_shape.push_back(
                table.settings_shape[static_cast<std::size_t>(p)]);

    std::vector<Index> receiver_outcomes_shape;
    for (int t = 0; t < n; ++t)
        if (is_receiver[static_cast<std::size_t>(t)])
            receiver_outcomes_shape.push_back(
                table.outcomes_shape[static_cast<std::size_t>(t)]);

    const Index n_spectator = shape_count(spectator_settings_shape);
    const Index n_marginal = shape_count(receiver_outcomes_shape);
    const Index sender_settings =
        table.settings_shape[static_cast<std::size_t>(from_party)];
    const Index oc = table.outcomes_count();

    auto marginal = [&](const std::vector<int>& settings) {
        std::vector<double> m(static_cast<std::size_t>(n_marginal), 0.0);
        const Index offset = table.slice_offset(settings);
        std::vector<int> outcome;
        const auto strides = shape_product_strides(receiver_outcomes_shape);
        for (Index flat = 0; flat < oc; ++flat) {
            unflatten(flat, table.outcomes_shape, outcome);
            Index idx = 0;
            Index k = 0;
            for (Index p = 0; p < n; ++p)
                if (is_receiver[static_cast<std::size_t>(p)])
                    idx += outcome[static_cast<std::size_t>(p)] *
                           strides[static_cast<std::size_t>(k++)];
            m[static_cast<std::size_t>(idx)] +=
                table.values[static_cast<std::size_t>(offset + flat)];
        }
        return m;
    };

    double worst = 0.0;
    std::vector<int> spectator;
    for (Index sflat = 0; sflat < n_spectator; ++sflat) {
        unflatten(sflat, spectator_settings_shape, spectator);
        std::vector<int> settings(static_cast<std::size_t>(n), 0);
        Index k = 0;
        for (Index p = 0; p < n; ++p)
            if (p != from_party)
                settings[static_cast<std::size_t>(p)] =
                    spectator[static_cast<std::size_t>(k++)];

        for (Index x = 0; x < sender_settings; ++x)
            for (Index xp = x + 1; xp < sender_settings; ++xp) {
                settings[static_cast<std::size_t>(from_party)] =
                    static_cast<int>(x);
                const auto mx = marginal(settings);
                settings[static_cast<std::size_t>(from_party)] =
                    static_cast<int>(xp);
                const auto mxp = marginal(settings);
                double dist = 0.0;
                for (std::size_t i = 0; i < mx.size(); ++i)
                    dist += std::abs(mx[i] - mxp[i]);
                worst = std::max(worst, 0.5 * dist);
            }
    }
    return worst;
}

} // namespace procmat
