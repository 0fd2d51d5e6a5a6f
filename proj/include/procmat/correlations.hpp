#pragma once

#include <map>
#include <string>
#include <vector>

#include "procmat/instruments.hpp"
#include "procmat/process.hpp"

// The generalized Born rule and everything evaluated on top of it:
// probability tables, correlators, inequality functionals, the GHZ-paradox
// check, and no-signalling distances.

namespace procmat {

// ------------------------------- scenarios ----------------------------------

struct Party {
    std::string id;
    Layout labels;                        // this party's slice of the process
    std::vector<Instrument> instruments;  // one per setting

    Index n_settings() const { return static_cast<Index>(instruments.size()); }
};

struct Scenario {
    ProcessMatrix process;
    std::vector<Party> parties;
};

// Full invariant check: party labels partition the process layout, every
// instrument is valid and acts on its party's labels. Throws
// validation_error / layout_error with the violated invariant named.
void check_scenario(const Scenario& s, double tol = kValidationTol);

// --------------------------- probability tables ------------------------------

// P(outcomes | settings) over finitely many parties, stored settings-major.
struct ProbabilityTable {
    std::vector<Index> settings_shape;
    std::vector<Index> outcomes_shape;
    std::vector<std::vector<double>> outcome_values;  // per party
    std::vector<double> values;

    Index n_parties() const {
        return static_cast<Index>(settings_shape.size());
    }
    Index settings_count() const;
    Index outcomes_count() const;
    Index slice_offset(const std::vector<int>& settings) const;
    double at(const std::vector<int>& settings,
              const std::vector<int>& outcomes) const;

    // Entries within [-tol, 1 + tol] and unit slice sums.
    bool is_valid(double tol = 1e-9, std::string* why = nullptr) const;
};

// One slice of the Born rule P(a, b, ... | x, y, ...) =
// tr[(M_a (x) M_b ...) W] for a fixed settings tuple. Entries are cleared
// of numerical dust (clipped to 0 below 1e-14, error below -1e-12) and the
// slice is renormalized only when its sum deviates from 1 by < 1e-9.
std::vector<double> born_rule(const Scenario& s,
                              const std::vector<int>& settings);

// All settings tuples; independent tuples are computed in parallel.
ProbabilityTable compute_table(const Scenario& s);

// ------------------------------- correlators ---------------------------------

// sum_{ab...} (a b ...) P(a, b, ... | settings); outcome values must be +/-1.
double expectation(const ProbabilityTable& table,
                   const std::vector<int>& settings);

// ---------------------------- inequality functionals -------------------------

struct InequalityFunctional {
    std::string name;
    double bound = 0.0;
    bool absolute = false;  // evaluate as |sum| (Svetlichny)
    std::map<std::vector<int>, double> coefficients;

    Index n_parties() const {
        return coefficients.empty()
                   ? 0
                   : static_cast<Index>(coefficients.begin()->first.size());
    }
    Index n_settings() const;
};

// <A0B0> - <A0B1> + <A1B0> + <A1B1> <= 2
InequalityFunctional chsh();
// <A0B0C0> - <A0B1C1> - <A1B0C1> - <A1B1C0> <= 2
InequalityFunctional mermin();
// |<000> + <001> + <010> + <100> - <110> - <101> - <011> - <111>| <= 4
InequalityFunctional svetlichny();

InequalityFunctional preset_inequality(const std::string& name);

double evaluate(const InequalityFunctional& f, const ProbabilityTable& table);

// ------------------------------ GHZ paradox ----------------------------------

// Settings 0 and 1 are the X and Y measurements. The paradox assignment is
// <XXX> = +1 and <XYY> = <YXY> = <YYX> = -1.
struct GhzParadoxReport {
    double xxx = 0.0, xyy = 0.0, yxy = 0.0, yyx = 0.0;
    double max_deviation() const;
    bool holds(double tol) const { return max_deviation() <= tol; }
};

GhzParadoxReport ghz_paradox_check(const ProbabilityTable& table);

// ------------------------------ no-signalling --------------------------------

// Maximum over the sender's setting pairs (and all spectator settings) of
// the total variational distance (1/2-normalized) between the receivers'
// outcome marginals.
double no_signalling_distance(const ProbabilityTable& table, int from_party,
                              const std::vector<int>& to_parties);

} // namespace procmat
