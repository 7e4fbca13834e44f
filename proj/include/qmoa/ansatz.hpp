#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmoa/fourier.hpp"
#include "qmoa/graphs.hpp"
#include "qmoa/mixers.hpp"
#include "qmoa/objective.hpp"
#include "qmoa/state.hpp"

namespace qmoa {

enum class Algorithm { qmoa, qaoa_complete, qaoa_hypercube, qowe };

std::string to_string(Algorithm a);
// accepts the snake_case names printed by to_string
Algorithm parse_algorithm(std::string_view name);

struct AnsatzSpec {
    Algorithm algorithm = Algorithm::qmoa;
    // one graph per dimension; QMOA only
    std::vector<CirculantGraph> graphs;
    // QMOA: one walk time per layer instead of one per dimension
    bool shared_walk_time = false;
    // equal superposition when empty
    std::optional<WavepacketSpec> wavepacket;
    int depth = 1;

    std::size_t params_per_layer(int dims) const;
    std::size_t parameter_count(int dims) const { return static_cast<std::size_t>(depth) * params_per_layer(dims); }
};

// QMOA over complete graphs in every dimension, the default in most studies.
AnsatzSpec qmoa_complete_spec(const SolutionGrid& grid, int depth);

struct Layer {
    double gamma = 0.0;
    std::vector<double> walk_times;
};

// Flat layout used by the optimiser: per layer [gamma, t_0, ..., t_{m-1}].
struct ParameterVector {
    std::vector<Layer> layers;

    int depth() const { return static_cast<int>(layers.size()); }
    std::vector<double> flatten() const;
    static ParameterVector unflatten(std::span<const double> flat, std::size_t params_per_layer);
};

// Throws if params does not match spec.depth and the per-layer layout.
void check_layout(const AnsatzSpec& spec, const ParameterVector& params, int dims);

// Reusable simulator: owns the plan, the mixer tables and the initial state,
// so repeated objective calls do not allocate. Not thread safe; use one per
// worker.
class AnsatzSimulator {
public:
    AnsatzSimulator(AnsatzSpec spec, const ObjectiveTable& table, const SolutionGrid& grid);

    const AnsatzSpec& spec() const { return spec_; }
    const SolutionGrid& grid() const { return grid_; }
    const ObjectiveTable& table() const { return *table_; }
    const StateVector& initial_state() const { return initial_; }
    std::size_t params_per_layer() const { return per_layer_; }

    // Any depth is accepted as long as the flat size is a multiple of the
    // per-layer count.
    const StateVector& prepare(std::span<const double> flat);
    double objective(std::span<const double> flat);

    // Norm drift above 1e-12 after a prepare is renormalised away and
    // counted here; off, the raw state is returned.
    void set_renormalise(bool on) { renormalise_ = on; }
    long renormalisations() const { return renormalisations_; }
    double max_drift() const { return max_drift_; }

private:
    void apply_mixer(std::span<const double> times);

    AnsatzSpec spec_;
    const ObjectiveTable* table_;
    SolutionGrid grid_;
    std::size_t per_layer_;
    const FourierPlan* plan_ = nullptr;
    std::optional<CirculantWalk> walk_;
    std::optional<MomentumWalk> momentum_;
    StateVector initial_;
    StateVector state_;
    std::vector<Complex> scratch_;
    std::vector<double> times_;
    bool renormalise_ = true;
    long renormalisations_ = 0;
    double max_drift_ = 0.0;
};

StateVector apply_ansatz(const AnsatzSpec& spec, const ParameterVector& params, const ObjectiveTable& table,
                         const SolutionGrid& grid);
double objective_value(const AnsatzSpec& spec, const ParameterVector& params, const ObjectiveTable& table,
                       const SolutionGrid& grid);

}  // namespace qmoa
